// Copyright 2026 The randlind Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// stats.hpp: histograms, goodness-of-fit statistics and small regressions.

#pragma once

#include <boost/math/statistics/anderson_darling.hpp>
#include <boost/math/statistics/univariate_statistics.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace randlind::stats {

inline double mean(std::span<const double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Population variance (divides by n).
inline double variance(std::span<const double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

inline double sample_stddev(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    return std::sqrt(variance(v) * static_cast<double>(v.size()) / static_cast<double>(v.size() - 1));
}

inline double standard_error(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    return sample_stddev(v) / std::sqrt(static_cast<double>(v.size()));
}

inline double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw std::invalid_argument("quantile: empty sample");
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

struct Histogram {
    std::vector<double> edges;   // bins + 1, strictly increasing
    std::vector<double> counts;  // raw counts per bin
    std::vector<double> density; // counts / (normalizer * width)

    std::size_t bins() const { return counts.size(); }
    double width(std::size_t b) const { return edges[b + 1] - edges[b]; }
    double center(std::size_t b) const { return 0.5 * (edges[b] + edges[b + 1]); }
    double integral() const {
        double s = 0.0;
        for (std::size_t b = 0; b < bins(); ++b) s += density[b] * width(b);
        return s;
    }
    double total_count() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }
};

/// Uniform-bin histogram on [lo, hi]; density normalized so that the
/// integral equals total_count / normalizer. Values outside [lo, hi] are dropped.
inline Histogram make_histogram(std::span<const double> values, double lo, double hi, std::size_t bins,
                                double normalizer) {
    if (bins == 0) throw std::invalid_argument("make_histogram: bins must be > 0");
    if (!(hi > lo)) {
        // degenerate support: a single bin of unit width around the value
        lo -= 0.5;
        hi += 0.5;
        bins = 1;
    }
    Histogram h;
    h.edges.resize(bins + 1);
    const double w = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + w * static_cast<double>(b);
    h.edges.back() = hi;
    h.counts.assign(bins, 0.0);
    for (double x : values) {
        if (x < lo || x > hi) continue;
        auto b = static_cast<std::size_t>((x - lo) / w);
        if (b >= bins) b = bins - 1;
        h.counts[b] += 1.0;
    }
    h.density.resize(bins);
    for (std::size_t b = 0; b < bins; ++b)
        h.density[b] = normalizer > 0.0 ? h.counts[b] / (normalizer * h.width(b)) : 0.0;
    return h;
}

/// Freedman-Diaconis bin count for the sample range, clamped to [1, max_bins].
inline std::size_t freedman_diaconis_bins(std::span<const double> values, std::size_t max_bins = 400) {
    if (values.size() < 2) return 1;
    std::vector<double> v(values.begin(), values.end());
    const double iqr = quantile(v, 0.75) - quantile(v, 0.25);
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    const double range = *mx - *mn;
    if (!(iqr > 0.0) || !(range > 0.0)) return 1;
    const double h = 2.0 * iqr / std::cbrt(static_cast<double>(v.size()));
    const auto b = static_cast<std::size_t>(std::ceil(range / h));
    return std::clamp<std::size_t>(b, 1, max_bins);
}

/// sup_x |F_n(x) - F(x)| for a sample against a continuous CDF.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

/// Asymptotic Kolmogorov tail probability with Stephens' finite-n correction.
inline double ks_pvalue(double d, double n_effective) {
    const double sn = std::sqrt(n_effective);
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0, sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct NormalityTest {
    double a2 = 0.0;       // Anderson-Darling statistic
    double a2_star = 0.0;  // small-sample adjusted, estimated mean and variance
    double p_value = 0.0;
};

/// Anderson-Darling test of normality with mean and variance estimated from the sample.
inline NormalityTest anderson_darling_normality(std::vector<double> sample) {
    if (sample.size() < 8) throw std::invalid_argument("anderson_darling_normality: need >= 8 points");
    std::sort(sample.begin(), sample.end());
    NormalityTest t;
    t.a2 = boost::math::statistics::anderson_darling_normality_statistic(sample);
    const double n = static_cast<double>(sample.size());
    const double a = t.a2 * (1.0 + 0.75 / n + 2.25 / (n * n));
    t.a2_star = a;
    if (a >= 0.6) t.p_value = std::exp(1.2937 - 5.709 * a + 0.0186 * a * a);
    else if (a >= 0.34) t.p_value = std::exp(0.9177 - 4.279 * a - 1.38 * a * a);
    else if (a >= 0.2) t.p_value = 1.0 - std::exp(-8.318 + 42.796 * a - 59.938 * a * a);
    else t.p_value = 1.0 - std::exp(-13.436 + 101.14 * a - 223.73 * a * a);
    t.p_value = std::clamp(t.p_value, 0.0, 1.0);
    return t;
}

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double residual = 0.0;  // sum of squared residuals
    double slope_stderr = 0.0;
    double intercept_stderr = 0.0;
};

inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit: need >= 2 paired points");
    const double n = static_cast<double>(x.size());
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("linear_fit: x values are all equal");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        f.residual += e * e;
    }
    if (x.size() > 2) {
        const double s2 = f.residual / (n - 2.0);
        f.slope_stderr = std::sqrt(s2 / sxx);
        f.intercept_stderr = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
    }
    return f;
}

}  // namespace randlind::stats

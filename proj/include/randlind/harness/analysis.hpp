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

// harness/analysis.hpp: large-N extrapolation, power-law fits and
// finite-size scaling collapse.

#pragma once

#include "../stats.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace randlind::harness {

struct Extrapolation {
    double intercept = 0.0;  // N -> infinity estimate
    double slope = 0.0;
    double residual = 0.0;   // sum of squared residuals
    double intercept_stderr = 0.0;
};

/// Least-squares line of y against 1/(beta N).
inline Extrapolation extrapolate_largeN(const std::map<int, double>& values, int beta) {
    if (values.size() < 3) throw std::invalid_argument("extrapolate_largeN: need >= 3 distinct N");
    std::vector<double> x, y;
    for (const auto& [N, v] : values) {
        if (N < 1) throw std::invalid_argument("extrapolate_largeN: N must be >= 1");
        x.push_back(1.0 / (static_cast<double>(beta) * N));
        y.push_back(v);
    }
    const stats::LinearFit f = stats::linear_fit(x, y);
    return {f.intercept, f.slope, f.residual, f.intercept_stderr};
}

struct PowerLawFit {
    double exponent = 0.0;
    double amplitude = 0.0;
    double exponent_stderr = 0.0;
    std::size_t points = 0;
    double window_lo = 0.0, window_hi = 0.0;
};

/// Q = amplitude * x^exponent by least squares on log Q vs log x over x in [lo, hi].
inline PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& data,
                                 double lo = 0.0, double hi = std::numeric_limits<double>::infinity()) {
    std::vector<double> lx, ly;
    for (const auto& [x, q] : data) {
        if (x < lo || x > hi) continue;
        if (!(x > 0.0) || !(q > 0.0)) throw std::invalid_argument("fit_power_law: data must be positive");
        lx.push_back(std::log(x));
        ly.push_back(std::log(q));
    }
    if (lx.size() < 4) throw std::invalid_argument("fit_power_law: need >= 4 points in the window");
    const stats::LinearFit f = stats::linear_fit(lx, ly);
    return {f.slope, std::exp(f.intercept), f.slope_stderr, lx.size(), lo, hi};
}

// ---------------------------------------------------------------------------
// Scaling collapse

/// Observable Q sampled along g_eff at fixed N.
struct Curve {
    int N = 0;
    std::vector<double> g_eff;  // strictly increasing
    std::vector<double> Q;
};

namespace detail {

inline double interp(const std::vector<double>& x, const std::vector<double>& y, double t) {
    auto it = std::upper_bound(x.begin(), x.end(), t);
    if (it == x.begin()) return y.front();
    if (it == x.end()) return y.back();
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    const double w = (t - x[i - 1]) / (x[i] - x[i - 1]);
    return y[i - 1] + w * (y[i] - y[i - 1]);
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

inline constexpr std::size_t kCollapseGridPoints = 64;

/// Rescales each curve to (g_eff (beta N)^-kappa, Q / (g_eff^2 (beta N)^nu)) and
/// returns the mean squared log-deviation from the pointwise median curve on
/// the common domain. Curves are interpolated linearly in log-log coordinates.
inline double collapse_quality(const std::vector<Curve>& curves, int beta, double nu, double kappa) {
    if (curves.size() < 2) throw std::invalid_argument("collapse_quality: need >= 2 curves");
    std::vector<std::vector<double>> lx(curves.size()), ly(curves.size());
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const Curve& cv = curves[c];
        if (cv.g_eff.size() != cv.Q.size() || cv.g_eff.size() < 2)
            throw std::invalid_argument("collapse_quality: each curve needs >= 2 (g_eff, Q) pairs");
        const double bn = static_cast<double>(beta) * cv.N;
        for (std::size_t i = 0; i < cv.g_eff.size(); ++i) {
            if (!(cv.g_eff[i] > 0.0) || !(cv.Q[i] > 0.0)) throw std::invalid_argument("collapse_quality: data must be positive");
            if (i > 0 && cv.g_eff[i] <= cv.g_eff[i - 1])
                throw std::invalid_argument("collapse_quality: g_eff must be strictly increasing");
            lx[c].push_back(std::log(cv.g_eff[i]) - kappa * std::log(bn));
            ly[c].push_back(std::log(cv.Q[i]) - 2.0 * std::log(cv.g_eff[i]) - nu * std::log(bn));
        }
        lo = std::max(lo, lx[c].front());
        hi = std::min(hi, lx[c].back());
    }
    if (!(hi > lo)) throw std::invalid_argument("collapse_quality: rescaled curves do not overlap");
    double total = 0.0;
    std::vector<double> vals(curves.size());
    for (std::size_t k = 0; k < kCollapseGridPoints; ++k) {
        const double t = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(kCollapseGridPoints - 1);
        for (std::size_t c = 0; c < curves.size(); ++c) vals[c] = detail::interp(lx[c], ly[c], t);
        const double m = detail::median(vals);
        for (double v : vals) total += (v - m) * (v - m);
    }
    return total / static_cast<double>(kCollapseGridPoints * curves.size());
}

struct CollapseFit {
    double nu = 0.0;
    double kappa = 0.0;
    double quality = 0.0;
    bool converged = false;
    bool degenerate = false;  // quality nearly flat along some direction
    double hessian_min = 0.0, hessian_max = 0.0;
    std::size_t iterations = 0;
};

struct CollapseOptions {
    double step = 0.1;             // initial simplex size
    double tolerance = 1e-3;       // simplex size at convergence
    std::size_t max_iterations = 2000;
    double degeneracy_threshold = 1e-10;
    double relative_degeneracy = 1e-6;
};

/// Nelder-Mead (GSL nmsimplex2) minimization of collapse_quality over (nu, kappa).
inline CollapseFit optimize_exponents(const std::vector<Curve>& curves, int beta, double nu0, double kappa0,
                                      const CollapseOptions& opts = {}) {
    collapse_quality(curves, beta, nu0, kappa0);  // validates input at the start point

    struct Ctx {
        const std::vector<Curve>* curves;
        int beta;
    } ctx{&curves, beta};
    auto objective = [](const gsl_vector* v, void* params) -> double {
        const auto* c = static_cast<const Ctx*>(params);
        try {
            return collapse_quality(*c->curves, c->beta, gsl_vector_get(v, 0), gsl_vector_get(v, 1));
        } catch (const std::invalid_argument&) {
            return 1e6;  // no overlap: push the simplex back
        }
    };

    gsl_multimin_function fn{objective, 2, &ctx};
    gsl_vector* x = gsl_vector_alloc(2);
    gsl_vector* ss = gsl_vector_alloc(2);
    gsl_vector_set(x, 0, nu0);
    gsl_vector_set(x, 1, kappa0);
    gsl_vector_set_all(ss, opts.step);
    gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
    gsl_multimin_fminimizer_set(s, &fn, x, ss);

    CollapseFit fit;
    int status = GSL_CONTINUE;
    while (status == GSL_CONTINUE && fit.iterations < opts.max_iterations) {
        ++fit.iterations;
        if (gsl_multimin_fminimizer_iterate(s)) break;
        status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), opts.tolerance);
    }
    fit.converged = status == GSL_SUCCESS;
    fit.nu = gsl_vector_get(s->x, 0);
    fit.kappa = gsl_vector_get(s->x, 1);
    fit.quality = s->fval;
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(ss);
    gsl_vector_free(x);

    // A (near-)singular Hessian at the optimum means some combination of
    // the exponents is not identified by the data.
    auto q = [&](double dn, double dk) {
        try {
            return collapse_quality(curves, beta, fit.nu + dn, fit.kappa + dk);
        } catch (const std::invalid_argument&) {
            return 1e6;
        }
    };
    const double h = 0.02, q0 = q(0.0, 0.0);
    const double hnn = (q(h, 0.0) - 2.0 * q0 + q(-h, 0.0)) / (h * h);
    const double hkk = (q(0.0, h) - 2.0 * q0 + q(0.0, -h)) / (h * h);
    const double hnk = (q(h, h) - q(h, -h) - q(-h, h) + q(-h, -h)) / (4.0 * h * h);
    const double tr = hnn + hkk, det = hnn * hkk - hnk * hnk;
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    fit.hessian_min = 0.5 * tr - disc;
    fit.hessian_max = 0.5 * tr + disc;
    fit.degenerate = fit.hessian_max < opts.degeneracy_threshold ||
                     fit.hessian_min < opts.relative_degeneracy * fit.hessian_max;
    return fit;
}

}  // namespace randlind::harness

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

#include <randlind/rng.hpp>
#include <randlind/stats.hpp>

#include <gtest/gtest.h>

#include <cmath>

namespace {

using namespace randlind;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

TEST(Stats, MomentsAndQuantiles) {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    EXPECT_DOUBLE_EQ(stats::mean(v), 2.5);
    EXPECT_DOUBLE_EQ(stats::variance(v), 1.25);
    EXPECT_DOUBLE_EQ(stats::sample_stddev(v), std::sqrt(5.0 / 3.0));
    EXPECT_DOUBLE_EQ(stats::standard_error(v), std::sqrt(5.0 / 3.0) / 2.0);
    EXPECT_DOUBLE_EQ(stats::quantile(v, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(stats::quantile(v, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(stats::quantile(v, 1.0), 4.0);
    EXPECT_THROW(stats::quantile({}, 0.5), std::invalid_argument);
    EXPECT_TRUE(std::isnan(stats::mean(std::vector<double>{})));
}

TEST(Histogram, CountsAndNormalization) {
    const std::vector<double> v{0.1, 0.2, 0.6, 1.0, 2.0};
    const auto h = stats::make_histogram(v, 0.0, 1.0, 2, 5.0);
    EXPECT_EQ(h.counts, (std::vector<double>{2.0, 2.0}));
    EXPECT_DOUBLE_EQ(h.integral(), 0.8);
    EXPECT_DOUBLE_EQ(h.center(1), 0.75);
    EXPECT_THROW(stats::make_histogram(v, 0.0, 1.0, 0, 1.0), std::invalid_argument);
    const auto single = stats::make_histogram(std::vector<double>{3.0, 3.0}, 3.0, 3.0, 10, 2.0);
    EXPECT_EQ(single.bins(), 1u);
    EXPECT_DOUBLE_EQ(single.integral(), 1.0);
}

TEST(Histogram, FreedmanDiaconis) {
    std::vector<double> v;
    for (int i = 0; i < 1000; ++i) v.push_back(i / 999.0);
    // IQR 0.5, h = 1 / 10, range 1.
    EXPECT_EQ(stats::freedman_diaconis_bins(v), 10u);
    EXPECT_EQ(stats::freedman_diaconis_bins(std::vector<double>{1.0}), 1u);
    EXPECT_EQ(stats::freedman_diaconis_bins(std::vector<double>(5, 2.0)), 1u);
}

TEST(KS, HandComputedStatistic) {
    // Uniform CDF, sample {0.1, 0.5, 0.9}: max(0.1, 1/3 - 0.1, 0.5 - 1/3, 2/3 - 0.5, 0.9 - 2/3, 1 - 0.9).
    const double d = stats::ks_statistic({0.9, 0.1, 0.5}, [](double x) { return x; });
    EXPECT_NEAR(d, 0.9 - 2.0 / 3.0, 1e-15);
    EXPECT_THROW(stats::ks_statistic({}, [](double x) { return x; }), std::invalid_argument);
}

TEST(KS, TwoSample) {
    EXPECT_DOUBLE_EQ(stats::ks_two_sample({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}), 0.0);
    EXPECT_DOUBLE_EQ(stats::ks_two_sample({1.0, 2.0}, {3.0, 4.0}), 1.0);
    EXPECT_DOUBLE_EQ(stats::ks_two_sample({1.0, 3.0}, {2.0, 4.0}), 0.5);
}

TEST(KS, KolmogorovTailValues) {
    // Tabulated asymptotic critical values: Q(1.3581) = 0.05, Q(1.6276) = 0.01.
    const double n = 1e12;
    EXPECT_NEAR(stats::ks_pvalue(1.3581 / std::sqrt(n), n), 0.05, 2e-4);
    EXPECT_NEAR(stats::ks_pvalue(1.6276 / std::sqrt(n), n), 0.01, 1e-4);
    EXPECT_DOUBLE_EQ(stats::ks_pvalue(0.0, 100.0), 1.0);
    EXPECT_LT(stats::ks_pvalue(0.5, 100.0), 1e-15);
}

TEST(KS, NullCalibration) {
    // Under the null the p-value is roughly uniform: ~5% below 0.05.
    Rng gen(17);
    int rejected = 0;
    const int trials = 400;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> s(200);
        for (double& x : s) x = gen.normal();
        if (stats::ks_pvalue(stats::ks_statistic(s, normal_cdf), 200.0) < 0.05) ++rejected;
    }
    EXPECT_NEAR(rejected / double(trials), 0.05, 0.035);
}

// A^2 from the textbook formula, with mean and sample standard deviation estimated.
double anderson_darling_reference(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double m = 0.0;
    for (double v : x) m += v;
    m /= n;
    double s2 = 0.0;
    for (double v : x) s2 += (v - m) * (v - m);
    const double s = std::sqrt(s2 / (n - 1.0));
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fi = normal_cdf((x[i] - m) / s);
        const double fj = normal_cdf((x[x.size() - 1 - i] - m) / s);
        sum += (2.0 * i + 1.0) * (std::log(fi) + std::log(1.0 - fj));
    }
    return -n - sum / n;
}

TEST(AndersonDarling, MatchesClosedForm) {
    Rng gen(3);
    std::vector<double> s(50);
    for (double& x : s) x = 2.0 + 0.5 * gen.normal();
    const auto t = stats::anderson_darling_normality(s);
    EXPECT_NEAR(t.a2, anderson_darling_reference(s), 1e-9);
    EXPECT_NEAR(t.a2_star, t.a2 * (1.0 + 0.75 / 50.0 + 2.25 / 2500.0), 1e-12);
    EXPECT_THROW(stats::anderson_darling_normality({1.0, 2.0}), std::invalid_argument);
}

TEST(AndersonDarling, RejectsSkewedData) {
    Rng gen(4);
    std::vector<double> normal(500), expo(500);
    for (double& x : normal) x = gen.normal();
    for (double& x : expo) x = -std::log(gen.uniform());
    EXPECT_GT(stats::anderson_darling_normality(normal).p_value, 0.01);
    EXPECT_LT(stats::anderson_darling_normality(expo).p_value, 1e-6);
}

TEST(LinearFit, ExactLineAndErrors) {
    const std::vector<double> x{0.0, 1.0, 2.0, 3.0}, y{1.0, 3.0, 5.0, 7.0};
    const auto f = stats::linear_fit(x, y);
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_NEAR(f.residual, 0.0, 1e-24);
    EXPECT_THROW(stats::linear_fit(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 2.0}), std::invalid_argument);
    EXPECT_THROW(stats::linear_fit(std::vector<double>{1.0}, std::vector<double>{1.0}), std::invalid_argument);
}

}  // namespace

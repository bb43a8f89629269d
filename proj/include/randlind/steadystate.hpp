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

// steadystate.hpp: steady state rho_0, purity, eigenvalue variance, the
// effective Hamiltonian -log(rho_0) and its spacing-ratio statistics.

#pragma once

#include "core.hpp"
#include "hermitian_rep.hpp"
#include "lapack.hpp"
#include "liouvillian.hpp"
#include "spectra.hpp"
#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace randlind {

struct SteadyState {
    CMatrix rho;
    std::vector<double> p;  // eigenvalues of rho, ascending
    double min_eigenvalue = 0.0;
    double residual = 0.0;  // ||L vec(rho)|| / (||L||_F ||rho||_F)

    Eigen::Index dim() const { return rho.rows(); }
};

inline constexpr double kPositivityTolerance = 1e-8;
inline constexpr double kSteadyResidualTolerance = 1e-8;

/// Builds a validated steady state from a (possibly unnormalized, arbitrarily
/// phased) null vector of L in row-stacked form.
inline SteadyState steady_state_from_vector(const Superoperator& L, const CVector& v) {
    const Eigen::Index N = L.hilbert_dim();
    CMatrix rho = devectorize(v, N);
    const cplx t0 = rho.trace();
    if (!(std::abs(t0) > 0.0) || !std::isfinite(std::abs(t0)))
        throw NumericalError(ErrorKind::zero_mode, "steady state: zero-mode vector has vanishing trace");
    rho /= t0;  // removes the arbitrary complex phase and scale
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();

    SteadyState ss;
    ss.rho = rho;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw NumericalError(ErrorKind::eigensolver, "steady state: eigensolver failed");
    ss.p.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + N);
    ss.min_eigenvalue = ss.p.front();
    if (ss.min_eigenvalue < -kPositivityTolerance)
        throw NumericalError(ErrorKind::positivity,
                             "steady state: negative eigenvalue " + std::to_string(ss.min_eigenvalue));

    const double lnorm = L.frobenius_norm();
    const double rnorm = rho.norm();
    const double res = (L.matrix * vectorize(rho)).norm();
    ss.residual = lnorm > 0.0 ? res / (lnorm * rnorm) : res;
    if (res > kSteadyResidualTolerance * lnorm * rnorm)
        throw NumericalError(ErrorKind::residual, "steady state: residual " + std::to_string(ss.residual) + " too large");
    return ss;
}

/// rho_0 from the retained zero-mode eigenvector of a diagonalized superoperator.
inline SteadyState extract_steady_state(const Superoperator& L, const Spectrum& spectrum) {
    if (!spectrum.zero_mode_unique)
        throw NumericalError(ErrorKind::zero_mode, "extract_steady_state: zero mode is degenerate");
    if (!spectrum.zero_mode_vector)
        throw std::invalid_argument("extract_steady_state: spectrum carries no zero-mode vector");
    return steady_state_from_vector(L, *spectrum.zero_mode_vector);
}

/// rho_0 without a full diagonalization: solves L x = 0 with Tr x = 1 by LU
/// on the real Hermitian-basis representation. One row of the diagonal block
/// is linearly dependent (Tr L(rho) = 0) and is replaced by the trace row.
inline SteadyState solve_steady_state(const Superoperator& L) {
    const Eigen::Index N = L.hilbert_dim();
    const HermitianBasisMap basis(N);
    if (N == 1) return steady_state_from_vector(L, CVector::Ones(1));
    RMatrix M = basis.to_real(L.matrix);
    const auto& diag = basis.diagonal_indices();
    const Eigen::Index pivot_row = diag.front();
    M.row(pivot_row).setZero();
    for (Eigen::Index d : diag) M(pivot_row, d) = 1.0;
    RVector rhs = RVector::Zero(M.rows());
    rhs(pivot_row) = 1.0;
    lapack::solve(M, rhs);
    return steady_state_from_vector(L, basis.to_vec(rhs));
}

struct PurityVariance {
    double purity = 0.0;    // Tr rho^2
    double variance = 0.0;  // population variance of the eigenvalues p_i
};

inline PurityVariance purity_and_variance(const SteadyState& ss) {
    const double N = static_cast<double>(ss.p.size());
    PurityVariance out;
    for (double x : ss.p) out.purity += x * x;
    out.variance = stats::variance(ss.p);
    const double identity = out.purity - 1.0 / N - N * out.variance;
    if (std::abs(identity) > 1e-12)
        throw NumericalError(ErrorKind::residual,
                             "purity_and_variance: P0 - 1/N != N sigma^2 (off by " + std::to_string(identity) + ")");
    return out;
}

struct EffectiveHamiltonian {
    std::vector<double> epsilons;  // -log p_i for p_i > p_min, ascending
    std::size_t discarded_count = 0;
};

inline EffectiveHamiltonian effective_hamiltonian(const SteadyState& ss, double p_min = 1e-12,
                                                  std::size_t min_levels = 4) {
    if (!(p_min > 0.0)) throw std::invalid_argument("effective_hamiltonian: p_min must be > 0");
    EffectiveHamiltonian h;
    for (double p : ss.p) {
        if (p > p_min) h.epsilons.push_back(-std::log(p));
        else ++h.discarded_count;
    }
    std::sort(h.epsilons.begin(), h.epsilons.end());
    if (h.epsilons.size() < min_levels)
        throw NumericalError(ErrorKind::too_few_levels,
                             "effective_hamiltonian: only " + std::to_string(h.epsilons.size()) + " levels above p_min");
    return h;
}

struct RatioOptions {
    double r_max = 10.0;            // display support of the histogram only
    std::size_t bins = 50;
    double degeneracy_tol = 1e-14;  // spacings below this merge the two levels
};

struct RatioStatistics {
    std::vector<double> ratios;  // r_i = s_i / s_{i-1}
    double mean = 0.0;
    double stddev = 0.0;         // population standard deviation
    double statistic = 0.0;      // (sigma_r / <r>)^{-1}
    stats::Histogram histogram;  // P(r) on [0, r_max], normalized by all ratios
    std::size_t merged_levels = 0;
};

namespace detail {

inline void fill_ratio_moments(RatioStatistics& rs, const RatioOptions& opts) {
    rs.mean = stats::mean(rs.ratios);
    rs.stddev = std::sqrt(stats::variance(rs.ratios));
    rs.statistic = rs.stddev > 0.0 ? rs.mean / rs.stddev : std::numeric_limits<double>::infinity();
    rs.histogram = stats::make_histogram(rs.ratios, 0.0, opts.r_max, opts.bins, static_cast<double>(rs.ratios.size()));
}

}  // namespace detail

inline RatioStatistics spacing_ratios(std::span<const double> sorted_levels, const RatioOptions& opts = {}) {
    RatioStatistics rs;
    std::vector<double> levels;
    levels.reserve(sorted_levels.size());
    for (double e : sorted_levels) {
        if (!levels.empty() && e < levels.back())
            throw std::invalid_argument("spacing_ratios: levels must be sorted ascending");
        if (!levels.empty() && e - levels.back() < opts.degeneracy_tol) {
            ++rs.merged_levels;
            continue;
        }
        levels.push_back(e);
    }
    if (levels.size() < 3)
        throw NumericalError(ErrorKind::too_few_levels, "spacing_ratios: need >= 3 distinct levels");
    for (std::size_t i = 2; i < levels.size(); ++i)
        rs.ratios.push_back((levels[i] - levels[i - 1]) / (levels[i - 1] - levels[i - 2]));
    detail::fill_ratio_moments(rs, opts);
    return rs;
}

inline RatioStatistics spacing_ratios(const EffectiveHamiltonian& eff, const RatioOptions& opts = {}) {
    return spacing_ratios(std::span<const double>(eff.epsilons), opts);
}

/// Pools ratio lists across realizations (order-independent merge).
inline RatioStatistics pool_ratios(std::span<const RatioStatistics> ensemble, const RatioOptions& opts = {}) {
    RatioStatistics pooled;
    for (const auto& rs : ensemble) {
        pooled.ratios.insert(pooled.ratios.end(), rs.ratios.begin(), rs.ratios.end());
        pooled.merged_levels += rs.merged_levels;
    }
    if (pooled.ratios.empty()) throw std::invalid_argument("pool_ratios: no ratios");
    std::sort(pooled.ratios.begin(), pooled.ratios.end());
    detail::fill_ratio_moments(pooled, opts);
    return pooled;
}

/// (sigma_r / <r>)^{-1} over the pooled ensemble; requires >= 1000 ratios.
inline double ratio_moment_statistic(std::span<const RatioStatistics> ensemble) {
    const RatioStatistics pooled = pool_ratios(ensemble);
    if (pooled.ratios.size() < 1000)
        throw std::invalid_argument("ratio_moment_statistic: need >= 1000 pooled ratios");
    return pooled.statistic;
}

}  // namespace randlind

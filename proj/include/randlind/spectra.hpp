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

// spectra.hpp: exact diagonalization of the superoperator and the global
// spectral observables (center of mass R, spreads X and Y, gap), density
// cuts, marginal densities and gap distributions.

#pragma once

#include "core.hpp"
#include "hermitian_rep.hpp"
#include "lapack.hpp"
#include "liouvillian.hpp"
#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace randlind {

struct Spectrum {
    std::vector<cplx> eigenvalues;
    double max_residual = 0.0;       // max ||L v - lambda v|| / ||v|| over checked pairs
    std::size_t residual_samples = 0;
    std::size_t zero_mode_index = 0;
    double norm = 0.0;               // ||L||_F
    double tol_zero = 0.0;           // 1e-10 ||L||_F
    bool zero_mode_unique = true;
    std::optional<CVector> zero_mode_vector;  // row-stacked right eigenvector, when retained

    std::size_t size() const { return eigenvalues.size(); }
    cplx zero_mode() const { return eigenvalues.at(zero_mode_index); }

    /// Wraps an explicit eigenvalue list; the zero mode is the eigenvalue with the largest real part.
    static Spectrum from_eigenvalues(std::vector<cplx> values) {
        if (values.empty()) throw std::invalid_argument("Spectrum: empty eigenvalue list");
        Spectrum s;
        s.eigenvalues = std::move(values);
        s.zero_mode_index = static_cast<std::size_t>(
            std::max_element(s.eigenvalues.begin(), s.eigenvalues.end(),
                             [](cplx a, cplx b) { return a.real() < b.real(); }) -
            s.eigenvalues.begin());
        return s;
    }
};

struct DiagonalizeOptions {
    std::size_t residual_samples = 10;
    bool require_unique_zero_mode = true;
    bool keep_zero_mode_vector = true;
    double residual_tolerance = 1e-8;  // relative to ||L||_F
};

inline constexpr double kZeroModeTolerance = 1e-10;

inline Spectrum diagonalize(const Superoperator& L, const DiagonalizeOptions& opts = {}) {
    const Eigen::Index n = L.matrix.rows();
    if (n == 0 || L.matrix.cols() != n) throw std::invalid_argument("diagonalize: empty or non-square superoperator");
    const Eigen::Index N = L.hilbert_dim();
    if (N * N != n) throw std::invalid_argument("diagonalize: dimension is not N^2");

    Spectrum s;
    s.norm = L.frobenius_norm();
    s.tol_zero = kZeroModeTolerance * s.norm;

    if (s.norm == 0.0) {
        s.eigenvalues.assign(static_cast<std::size_t>(n), cplx(0.0));
        s.zero_mode_unique = n == 1;
        if (!s.zero_mode_unique && opts.require_unique_zero_mode)
            throw NumericalError(ErrorKind::zero_mode, "diagonalize: zero superoperator has a degenerate zero mode");
        if (s.zero_mode_unique && opts.keep_zero_mode_vector) s.zero_mode_vector = CVector::Ones(1);
        return s;
    }

    const HermitianBasisMap basis(N);
    double imag_residue = 0.0;
    RMatrix M = basis.to_real(L.matrix, &imag_residue);
    if (imag_residue > 1e-10 * std::max(1.0, s.norm))
        throw std::invalid_argument("diagonalize: superoperator is not hermiticity-preserving");

    const lapack::HessenbergReduction hess(std::move(M));
    std::vector<double> wr, wi;
    hess.eigenvalues(wr, wi);
    s.eigenvalues.resize(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) s.eigenvalues[k] = cplx(wr[k], wi[k]);

    // Zero mode: smallest modulus among the eigenvalues whose real part is within
    // tol_zero of the largest; unique when separated from the runner-up by tol_zero.
    double top = s.eigenvalues[0].real();
    for (cplx v : s.eigenvalues) top = std::max(top, v.real());
    std::size_t z = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
        if (s.eigenvalues[k].real() < top - s.tol_zero) continue;
        if (std::abs(s.eigenvalues[k]) < best) {
            best = std::abs(s.eigenvalues[k]);
            z = k;
        }
    }
    s.zero_mode_index = z;
    if (std::abs(s.eigenvalues[z]) > s.tol_zero)
        throw NumericalError(ErrorKind::zero_mode, "diagonalize: largest-real-part eigenvalue is not zero (|Lambda_0| = " +
                                                       std::to_string(std::abs(s.eigenvalues[z])) + ")");
    double runner_up = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
        if (k != z) runner_up = std::max(runner_up, s.eigenvalues[k].real());
    s.zero_mode_unique = s.eigenvalues[z].real() - runner_up >= s.tol_zero;
    if (!s.zero_mode_unique && opts.require_unique_zero_mode)
        throw NumericalError(ErrorKind::zero_mode, "diagonalize: zero mode is degenerate");

    // Residual check on the zero mode plus an evenly spaced sample of the rest.
    std::vector<lapack_logical> select(static_cast<std::size_t>(n), 0);
    const bool want_zero = s.zero_mode_unique && opts.keep_zero_mode_vector;
    if (want_zero || opts.residual_samples > 0) select[z] = 1;
    const std::size_t samples = std::min<std::size_t>(opts.residual_samples, static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < samples; ++k) select[(k * static_cast<std::size_t>(n)) / samples] = 1;

    if (std::any_of(select.begin(), select.end(), [](lapack_logical b) { return b != 0; })) {
        // Mirror dhsein's pair normalization so we know which eigenvalue each column belongs to.
        std::vector<lapack_logical> sel = select;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (sel[j] && wi[j] < 0.0) {
                sel[j] = 0;
                sel[j - 1] = 1;
            }
        }
        std::vector<bool> failed;
        const RMatrix vr = hess.eigenvectors(sel, wr, wi, &failed);
        Eigen::Index col = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!sel[j]) continue;
            CVector coeffs;
            if (wi[j] == 0.0) {
                coeffs = vr.col(col).cast<cplx>();
                col += 1;
            } else {
                coeffs = vr.col(col).cast<cplx>() + I * vr.col(col + 1).cast<cplx>();
                col += 2;
            }
            const CVector x = basis.to_vec(coeffs);
            const double xn = x.norm();
            if (!(xn > 0.0)) throw NumericalError(ErrorKind::eigensolver, "diagonalize: zero eigenvector returned");
            const cplx lambda(wr[j], wi[j]);
            const double res = (L.matrix * x - lambda * x).norm() / xn;
            s.max_residual = std::max(s.max_residual, res);
            s.residual_samples += wi[j] == 0.0 ? 1 : 2;  // the conjugate pair shares the residual
            if (static_cast<std::size_t>(j) == z && want_zero) s.zero_mode_vector = x / xn;
        }
        if (s.max_residual > opts.residual_tolerance * s.norm)
            throw NumericalError(ErrorKind::eigensolver,
                                 "diagonalize: eigenpair residual " + std::to_string(s.max_residual) + " too large");
    }
    return s;
}

struct SpectralSummary {
    double R = 0.0;         // mean real part (center of mass)
    double R_imag = 0.0;    // mean imaginary part, diagnostic only
    double X = 0.0;
    double Y = 0.0;
    double gap = 0.0;
    double g_eff = 0.0;
};

inline double geff(const ModelParams& p) { return p.g_eff(); }

/// R, X, Y over all eigenvalues (zero mode included); gap excludes exactly the zero mode.
inline SpectralSummary summarize(const Spectrum& spectrum, std::optional<ModelParams> params = std::nullopt) {
    const auto& ev = spectrum.eigenvalues;
    const double n = static_cast<double>(ev.size());
    SpectralSummary out;
    cplx center = 0.0;
    for (cplx v : ev) center += v;
    center /= n;
    out.R = center.real();
    out.R_imag = center.imag();
    double x2 = 0.0, y2 = 0.0;
    for (cplx v : ev) {
        x2 += (v.real() - out.R) * (v.real() - out.R);
        y2 += v.imag() * v.imag();
    }
    out.X = std::sqrt(x2 / n);
    out.Y = std::sqrt(y2 / n);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < ev.size(); ++k)
        if (k != spectrum.zero_mode_index) best = std::max(best, ev[k].real());
    out.gap = std::isfinite(best) ? std::max(0.0, -best) : 0.0;
    if (params) out.g_eff = params->g_eff();
    return out;
}

// ---------------------------------------------------------------------------
// Densities

enum class DensityAxis {
    cut_real,       // strip around Re(Lambda) = c, histogram of Im(Lambda)
    cut_imag,       // strip around Im(Lambda) = c, histogram of Re(Lambda)
    marginal_imag,  // integrated density of Im(Lambda)
    marginal_real,  // integrated density of Re(Lambda)
};

inline const char* to_string(DensityAxis a) {
    switch (a) {
    case DensityAxis::cut_real: return "cut_real";
    case DensityAxis::cut_imag: return "cut_imag";
    case DensityAxis::marginal_imag: return "marginal_imag";
    case DensityAxis::marginal_real: return "marginal_real";
    }
    return "unknown";
}

struct DensityCut {
    DensityAxis axis = DensityAxis::cut_real;
    double c = 0.0;
    double strip_width = 0.0;
    stats::Histogram histogram;
    std::vector<double> sample;   // orthogonal coordinate of every point in the strip
    std::size_t points_in_strip = 0;
    std::size_t total_points = 0;
    bool empty = true;

    /// Same histogram rescaled to unit mass over the strip.
    stats::Histogram normalized_to_unit_mass() const {
        stats::Histogram h = histogram;
        if (points_in_strip == 0) return h;
        const double f = static_cast<double>(total_points) / static_cast<double>(points_in_strip);
        for (double& d : h.density) d *= f;
        return h;
    }
};

struct DensityOptions {
    std::size_t bins = 0;                              // 0 = Freedman-Diaconis on the sample
    std::optional<std::pair<double, double>> range;    // default: sample min/max
    bool omit_zero = false;                            // drop the zero mode
};

namespace detail {

inline stats::Histogram histogram_for(std::span<const double> sample, const DensityOptions& opts, double normalizer) {
    double lo = 0.0, hi = 0.0;
    if (opts.range) {
        lo = opts.range->first;
        hi = opts.range->second;
    } else if (!sample.empty()) {
        const auto [mn, mx] = std::minmax_element(sample.begin(), sample.end());
        lo = *mn;
        hi = *mx;
    }
    const std::size_t bins = opts.bins ? opts.bins : stats::freedman_diaconis_bins(sample);
    return stats::make_histogram(sample, lo, hi, bins, normalizer);
}

}  // namespace detail

/// Density along a strip |coordinate - c| <= strip_width/2; integral = (points in strip) / (all points).
inline DensityCut density_cut(const Spectrum& spectrum, DensityAxis axis, double c, double strip_width,
                              const DensityOptions& opts = {}) {
    if (axis != DensityAxis::cut_real && axis != DensityAxis::cut_imag)
        throw std::invalid_argument("density_cut: axis must be cut_real or cut_imag");
    if (!(strip_width > 0.0)) throw std::invalid_argument("density_cut: strip_width must be > 0");
    DensityCut cut;
    cut.axis = axis;
    cut.c = c;
    cut.strip_width = strip_width;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        if (opts.omit_zero && k == spectrum.zero_mode_index) continue;
        ++cut.total_points;
        const cplx v = spectrum.eigenvalues[k];
        const double along = axis == DensityAxis::cut_real ? v.real() : v.imag();
        if (std::abs(along - c) <= 0.5 * strip_width)
            cut.sample.push_back(axis == DensityAxis::cut_real ? v.imag() : v.real());
    }
    cut.points_in_strip = cut.sample.size();
    cut.empty = cut.sample.empty();
    if (!cut.empty)
        cut.histogram = detail::histogram_for(cut.sample, opts, static_cast<double>(cut.total_points));
    return cut;
}

/// The four standard cuts: Re = R, Re = R + X, Im = 0, Im = Y. Default strip width max(X, Y)/25.
inline std::vector<DensityCut> preset_cuts(const Spectrum& spectrum, const SpectralSummary& summary,
                                           std::optional<double> strip_width = std::nullopt,
                                           const DensityOptions& opts = {}) {
    const double w = strip_width.value_or(std::max(summary.X, summary.Y) / 25.0);
    return {density_cut(spectrum, DensityAxis::cut_real, summary.R, w, opts),
            density_cut(spectrum, DensityAxis::cut_real, summary.R + summary.X, w, opts),
            density_cut(spectrum, DensityAxis::cut_imag, 0.0, w, opts),
            density_cut(spectrum, DensityAxis::cut_imag, summary.Y, w, opts)};
}

/// Integrated density of the imaginary or real parts, normalized to unit mass over the included points.
inline DensityCut marginal_density(const Spectrum& spectrum, DensityAxis axis, const DensityOptions& opts = {}) {
    if (axis != DensityAxis::marginal_imag && axis != DensityAxis::marginal_real)
        throw std::invalid_argument("marginal_density: axis must be marginal_imag or marginal_real");
    if (opts.bins != 0 && opts.bins < 10) throw std::invalid_argument("marginal_density: bins must be >= 10");
    DensityCut cut;
    cut.axis = axis;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        if (opts.omit_zero && k == spectrum.zero_mode_index) continue;
        const cplx v = spectrum.eigenvalues[k];
        cut.sample.push_back(axis == DensityAxis::marginal_imag ? v.imag() : v.real());
    }
    cut.points_in_strip = cut.total_points = cut.sample.size();
    cut.empty = cut.sample.empty();
    if (!cut.empty) {
        DensityOptions o = opts;
        if (o.bins == 0) o.bins = std::max<std::size_t>(10, stats::freedman_diaconis_bins(cut.sample));
        cut.histogram = detail::histogram_for(cut.sample, o, static_cast<double>(cut.total_points));
    }
    return cut;
}

struct GapDistribution {
    stats::Histogram raw;
    stats::Histogram scaled;  // Delta / <Delta>
    double mean = 0.0;
    double stddev = 0.0;
    double relative_width = 0.0;  // sigma_Delta / <Delta>
    std::size_t realizations = 0;
};

inline GapDistribution gap_distribution(std::span<const double> gaps, std::size_t bins = 0) {
    if (gaps.size() < 20) throw std::invalid_argument("gap_distribution: need >= 20 realizations");
    GapDistribution d;
    d.realizations = gaps.size();
    d.mean = stats::mean(gaps);
    d.stddev = stats::sample_stddev(gaps);
    d.relative_width = d.mean > 0.0 ? d.stddev / d.mean : 0.0;
    DensityOptions o;
    o.bins = bins;
    d.raw = detail::histogram_for(gaps, o, static_cast<double>(gaps.size()));
    std::vector<double> scaled(gaps.begin(), gaps.end());
    if (d.mean > 0.0)
        for (double& x : scaled) x /= d.mean;
    d.scaled = detail::histogram_for(scaled, o, static_cast<double>(gaps.size()));
    return d;
}

inline GapDistribution gap_distribution(std::span<const Spectrum> spectra, std::size_t bins = 0) {
    std::vector<double> gaps;
    gaps.reserve(spectra.size());
    for (const auto& s : spectra) gaps.push_back(summarize(s).gap);
    return gap_distribution(std::span<const double>(gaps), bins);
}

}  // namespace randlind

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

// oracles.hpp: closed-form and quadrature reference laws.
//
//  - Wigner semicircle and its self-convolution (imaginary-part density at weak dissipation)
//  - Marchenko-Pastur law with r channels and the half-sum convolution that
//    bounds the real parts at strong dissipation
//  - weak and strong dissipation gap formulas, strong-dissipation X spread
//  - first-order classical rate generator A and the chi^2 law of its entries
//  - spacing-ratio reference laws (Poisson, GOE and GUE surmises)

#pragma once

#include "core.hpp"
#include "ensembles.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace randlind::oracles {

inline constexpr double pi = boost::math::constants::pi<double>();

namespace detail {

// Adaptive Gauss-Kronrod; throws when the error estimate exceeds abs_tol.
template <typename F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10) {
    if (!(b > a)) return 0.0;
    double error = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-11, &error);
    if (!std::isfinite(value) || error > abs_tol)
        throw NumericalError(ErrorKind::quadrature,
                             "quadrature did not converge (error estimate " + std::to_string(error) + ")");
    return value;
}

// Quadrature over [lo, hi] for integrands with square-root type endpoint
// behaviour. With x = lo + w sin^2(t) the distances to both ends,
// (x - lo, hi - x) = (w sin^2 t, w cos^2 t), are exact, and inverse square-root
// endpoint singularities become smooth in t. Tanh-sinh in t then resolves
// roots of the integrand lying just outside the interval.
template <typename G>
double integrate_endpoints(G&& g, double lo, double hi, double abs_tol = 1e-10) {
    if (!(hi > lo)) return 0.0;
    thread_local boost::math::quadrature::tanh_sinh<double> ts;
    const double w = hi - lo;
    auto f = [&](double t, double tc) {
        // tc: -t near t = 0, pi/2 - t near t = pi/2
        const double s = tc < 0.0 ? std::sin(-tc) : std::sin(t);
        const double c = tc > 0.0 ? std::sin(tc) : std::cos(t);
        return g(w * s * s, w * c * c) * 2.0 * w * s * c;
    };
    double error = 0.0, l1 = 0.0, value = 0.0;
    try {
        value = ts.integrate(f, 0.0, 0.5 * pi, 1e-12, &error, &l1);
    } catch (const std::exception& e) {
        throw NumericalError(ErrorKind::quadrature, std::string("quadrature failed: ") + e.what());
    }
    if (!std::isfinite(value) || error > abs_tol)
        throw NumericalError(ErrorKind::quadrature,
                             "quadrature did not converge (error estimate " + std::to_string(error) + ")");
    return value;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Semicircle

struct SemicircleLaw {
    double endpoint = 1.0;  // E*

    static SemicircleLaw for_hamiltonian(int N, int beta) { return SemicircleLaw{std::sqrt(2.0 * beta * N)}; }

    double density(double e) const {
        const double e2 = endpoint * endpoint;
        if (std::abs(e) >= endpoint) return 0.0;
        return 2.0 / (pi * e2) * std::sqrt(e2 - e * e);
    }
    double cdf(double e) const {
        if (e <= -endpoint) return 0.0;
        if (e >= endpoint) return 1.0;
        const double u = e / endpoint;
        return 0.5 + (u * std::sqrt(1.0 - u * u) + std::asin(u)) / pi;
    }
    double variance() const { return endpoint * endpoint / 4.0; }
};

/// Density of E1 - E2 for independent semicircle variables; support [-2E*, 2E*].
class SemicircleConvolution {
public:
    explicit SemicircleConvolution(double endpoint, double abs_tol = 1e-8) : law_{endpoint}, tol_(abs_tol) {
        if (!(endpoint > 0.0)) throw std::invalid_argument("semicircle_self_convolution: E* must be > 0");
    }

    double endpoint() const { return law_.endpoint; }

    double density(double x) const {
        const double E = law_.endpoint;
        if (std::abs(x) >= 2.0 * E) return 0.0;
        const double lo = std::max(-E, x - E), hi = std::min(E, x + E);
        // rho_W(e) rho_W(e - x) = c^2 sqrt((e + E)(E - e)(e - x + E)(E + x - e))
        const double c = 2.0 / (pi * E * E);
        auto g = [&](double dl, double dr) {
            return c * c * std::sqrt((dl + lo + E) * (dr + E - hi) * (dl + lo - x + E) * (dr + E + x - hi));
        };
        return detail::integrate_endpoints(g, lo, hi, tol_ / E);
    }

    /// P(E1 - E2 <= x) = int rho_W(e2) F_W(x + e2) de2.
    double cdf(double x) const {
        const double E = law_.endpoint;
        if (x <= -2.0 * E) return 0.0;
        if (x >= 2.0 * E) return 1.0;
        // F_W(x + e2) has kinks where x + e2 = +-E; split there.
        std::vector<double> cuts{-E, E};
        for (double k : {-E - x, E - x})
            if (k > -E && k < E) cuts.push_back(k);
        std::sort(cuts.begin(), cuts.end());
        const double c = 2.0 / (pi * E * E);
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double lo = cuts[i], hi = cuts[i + 1];
            auto g = [&](double dl, double dr) {
                const double e = dl < dr ? lo + dl : hi - dr;
                return c * std::sqrt((dl + lo + E) * (dr + E - hi)) * law_.cdf(x + e);
            };
            total += detail::integrate_endpoints(g, lo, hi, tol_);
        }
        return std::clamp(total, 0.0, 1.0);
    }

    double variance() const { return 2.0 * law_.variance(); }
    const SemicircleLaw& law() const { return law_; }

private:
    SemicircleLaw law_;
    double tol_;
};

inline SemicircleConvolution semicircle_self_convolution(double endpoint) { return SemicircleConvolution(endpoint); }

// ---------------------------------------------------------------------------
// Marchenko-Pastur

struct MarchenkoPasturLaw {
    double r = 1.0;

    double xi_minus() const { return std::pow(1.0 - std::sqrt(r), 2); }
    double xi_plus() const { return std::pow(1.0 + std::sqrt(r), 2); }

    double density(double x) const {
        const double lo = xi_minus(), hi = xi_plus();
        if (x <= lo || x >= hi || x <= 0.0) return 0.0;
        return std::sqrt((hi - x) * (x - lo)) / (2.0 * pi * x);
    }

    // rho(x) dx after x = xi_- + (xi_+ - xi_-) sin^2 theta; bounded on [0, pi/2].
    double moment(int n) const {
        const double lo = xi_minus(), w = xi_plus() - xi_minus();
        auto g = [&](double theta) {
            const double s = std::sin(theta), c = std::cos(theta);
            const double x = lo + w * s * s;
            return std::pow(x, n - 1) * w * w * s * s * c * c / pi;
        };
        return detail::integrate(g, 0.0, 0.5 * pi, 1e-10 * std::max(1.0, std::pow(xi_plus(), n)));
    }
};

inline double catalan(int n) {
    return boost::math::binomial_coefficient<double>(2 * n, n) / (n + 1.0);
}

/// Density of -(nu1 + nu2)/2 for independent MP(r) variables:
///   rho_L(x) = 2 int rho_MP(nu) rho_MP(-nu - 2x) dnu,  x in (-xi_+, -xi_-).
class MpConvolution {
public:
    explicit MpConvolution(double r = 1.0) : law_{r} {}

    double support_left() const { return -law_.xi_plus(); }
    double support_right() const { return -law_.xi_minus(); }

    double density(double x) const {
        // at r = 1 the window [0, -2x] shrinks to nothing as x -> 0 while the
        // density stays finite; stop before the integrand overflows
        if (law_.xi_minus() == 0.0 && x < 0.0) x = std::min(x, -1e-150);
        const double xm = law_.xi_minus(), xp = law_.xi_plus(), c = -2.0 * x;
        const double lo = std::max(xm, c - xp), hi = std::min(xp, c - xm);
        if (!(hi > lo)) return 0.0;
        // rho_MP(nu) rho_MP(c - nu) with each square-root factor written
        // relative to the nearest integration endpoint
        auto g = [&](double dl, double dr) {
            const double f1 = dl + (lo - xm);      // nu - xi_-
            const double f2 = dr + (xp - hi);      // xi_+ - nu
            const double f3 = dr + (c - xm - hi);  // c - nu - xi_-
            const double f4 = dl + (lo - c + xp);  // xi_+ - c + nu
            const double nu = xm + f1, mu = xm + f3;
            if (!(nu > 0.0) || !(mu > 0.0)) return 0.0;
            return (std::sqrt(f1) / nu) * (std::sqrt(f3) / mu) * std::sqrt(f2 * f4) / (4.0 * pi * pi);
        };
        return 2.0 * detail::integrate_endpoints(g, lo, hi, 1e-11);
    }

    // The integration window for nu changes shape at x = -(xi_+ + xi_-)/2; split there.
    double moment(int n) const {
        const double mid = -0.5 * (law_.xi_plus() + law_.xi_minus());
        const double tol = 1e-10 * std::max(1.0, std::pow(law_.xi_plus(), n));
        double total = 0.0;
        for (auto [lo, hi] : {std::pair{support_left(), mid}, std::pair{mid, support_right()}}) {
            auto g = [&, lo = lo, hi = hi](double dl, double dr) {
                const double x = dl < dr ? lo + dl : hi - dr;
                return std::pow(x, n) * density(x);
            };
            total += detail::integrate_endpoints(g, lo, hi, tol);
        }
        return total;
    }

    /// (-1/2)^n sum_k C(n,k) m_k m_{n-k} with MP moments m_k (Catalan numbers at r = 1).
    double series_moment(int n) const {
        double s = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double mk = law_.r == 1.0 ? catalan(k) : law_.moment(k);
            const double mnk = law_.r == 1.0 ? catalan(n - k) : law_.moment(n - k);
            s += boost::math::binomial_coefficient<double>(n, k) * mk * mnk;
        }
        return std::pow(-0.5, n) * s;
    }

    const MarchenkoPasturLaw& law() const { return law_; }

private:
    MarchenkoPasturLaw law_;
};

inline MpConvolution mp_convolution_density(double r = 1.0) { return MpConvolution(r); }

// ---------------------------------------------------------------------------
// Gap and spread formulas

/// <Delta> = beta N g^2 (1 - sqrt r)^2 at strong dissipation.
inline double gap_strong(const ModelParams& p) {
    const double s = 1.0 - std::sqrt(static_cast<double>(p.r));
    return p.beta * p.N * p.g * p.g * s * s;
}

/// <Delta> = beta N r g^2 at weak dissipation; exact only as r grows.
inline double gap_weak(const ModelParams& p) { return static_cast<double>(p.beta) * p.N * p.r * p.g * p.g; }

/// X ~ 4 beta N sqrt(r) g^2 at strong dissipation, up to an O(1) constant.
inline double x_spread_strong(const ModelParams& p) {
    return 4.0 * p.beta * p.N * std::sqrt(static_cast<double>(p.r)) * p.g * p.g;
}

// ---------------------------------------------------------------------------
// Classical generator

struct ClassicalGenerator {
    RMatrix A;

    /// Largest violation of: off-diagonal >= 0, zero column sums.
    double invariant_violation() const {
        double worst = 0.0;
        for (Eigen::Index m = 0; m < A.cols(); ++m) {
            worst = std::max(worst, std::abs(A.col(m).sum()));
            for (Eigen::Index n = 0; n < A.rows(); ++n)
                if (n != m) worst = std::max(worst, -A(n, m));
        }
        return worst;
    }

    std::vector<double> off_diagonal() const {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(A.size() - A.rows()));
        for (Eigen::Index m = 0; m < A.cols(); ++m)
            for (Eigen::Index n = 0; n < A.rows(); ++n)
                if (n != m) out.push_back(A(n, m));
        return out;
    }

    /// Eigenvalues of A (dense, general).
    std::vector<cplx> eigenvalues() const {
        Eigen::EigenSolver<RMatrix> es(A, false);
        if (es.info() != Eigen::Success) throw NumericalError(ErrorKind::eigensolver, "classical generator eigensolve failed");
        std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
        return out;
    }

    /// Smallest nonzero decay rate: -(second largest real part).
    double gap() const {
        auto ev = eigenvalues();
        std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.real() > b.real(); });
        return ev.size() > 1 ? -ev[1].real() : 0.0;
    }
};

/// A_nm = sum_l |W_nm|^2 (n != m), A_mm = -sum_{k != m} A_km.
inline ClassicalGenerator classical_generator(const JumpOperatorSet& jumps) {
    if (jumps.operators.empty()) throw std::invalid_argument("classical_generator: no jump operators");
    const Eigen::Index N = jumps.operators.front().rows();
    ClassicalGenerator gen;
    gen.A = RMatrix::Zero(N, N);
    for (const auto& W : jumps.operators) gen.A += W.cwiseAbs2();
    for (Eigen::Index m = 0; m < N; ++m) {
        gen.A(m, m) = 0.0;
        gen.A(m, m) = -gen.A.col(m).sum();
    }
    return gen;
}

/// Jump operators rotated into the eigenbasis of H, U^dagger W U.
inline JumpOperatorSet in_eigenbasis(const HamiltonianMatrix& H, const JumpOperatorSet& jumps) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H.entries);
    const CMatrix& U = es.eigenvectors();
    JumpOperatorSet out = jumps;
    for (auto& W : out.operators) W = U.adjoint() * W * U;
    return out;
}

/// Law of an off-diagonal entry of A: chi^2 with k = r beta degrees of freedom, scale 2 g^2.
struct Chi2EntryLaw {
    int k = 2;
    double g = 1.0;

    Chi2EntryLaw(int k_, double g_) : k(k_), g(g_) {
        if (k < 1 || !(g > 0.0)) throw std::invalid_argument("Chi2EntryLaw: need k >= 1, g > 0");
    }

    double density(double a) const {
        if (a <= 0.0) return 0.0;
        const double s = 2.0 * g * g, h = 0.5 * k;
        return std::exp((h - 1.0) * std::log(a) - a / s - h * std::log(s) - std::lgamma(h));
    }
    double cdf(double a) const { return a <= 0.0 ? 0.0 : boost::math::gamma_p(0.5 * k, a / (2.0 * g * g)); }
    double mean() const { return k * g * g; }
    double variance() const { return 2.0 * k * g * g * g * g; }
};

inline Chi2EntryLaw chi2_entry_law(int k, double g) { return Chi2EntryLaw(k, g); }

// ---------------------------------------------------------------------------
// Spacing-ratio references

enum class RatioKind { poisson, goe_surmise, gue_surmise };

inline const char* to_string(RatioKind k) {
    switch (k) {
    case RatioKind::poisson: return "poisson";
    case RatioKind::goe_surmise: return "goe-surmise";
    case RatioKind::gue_surmise: return "gue-surmise";
    }
    return "unknown";
}

/// GUE target sigma_r^2 / <r>^2 = 256 pi^2 / (27 sqrt3 - 4 pi)^2 - 1.
inline double gue_ratio_variance_target() {
    const double d = 27.0 * std::sqrt(3.0) - 4.0 * pi;
    return 256.0 * pi * pi / (d * d) - 1.0;
}

class RatioLaw {
public:
    explicit RatioLaw(RatioKind kind) : kind_(kind) {
        if (kind_ != RatioKind::poisson) norm_ = 1.0 / integral_to_infinity([&](double r) { return unnormalized(r); });
    }

    RatioKind kind() const { return kind_; }
    int beta() const { return kind_ == RatioKind::gue_surmise ? 2 : 1; }

    double density(double r) const {
        if (r < 0.0) return 0.0;
        if (kind_ == RatioKind::poisson) return 1.0 / ((1.0 + r) * (1.0 + r));
        return norm_ * unnormalized(r);
    }

    double cdf(double r) const {
        if (r <= 0.0) return 0.0;
        if (kind_ == RatioKind::poisson) return r / (1.0 + r);
        // P(R <= r) = 1 - P(R >= r); use the tail for r > 1 to stay on a finite interval.
        if (r <= 1.0) return std::clamp(detail::integrate([&](double x) { return density(x); }, 0.0, r, 1e-12), 0.0, 1.0);
        const double u = 1.0 / r;
        const double tail = detail::integrate([&](double v) { return v > 0.0 ? density(1.0 / v) / (v * v) : 0.0; }, 0.0,
                                              u, 1e-12);
        return std::clamp(1.0 - tail, 0.0, 1.0);
    }

    /// <r^n>; +infinity when the moment diverges.
    double moment(int n) const {
        if (n == 0) return 1.0;
        // tails: Poisson ~ r^-2, surmise ~ r^{-2-beta}
        const int tail_power = kind_ == RatioKind::poisson ? 2 : 2 + beta();
        if (n + 1 >= tail_power) return std::numeric_limits<double>::infinity();
        return integral_to_infinity([&](double r) { return std::pow(r, n) * density(r); });
    }

    /// int_0^cutoff r^n P(r) dr.
    double truncated_moment(int n, double cutoff) const {
        auto f = [&](double r) { return std::pow(r, n) * density(r); };
        if (cutoff <= 1.0) return detail::integrate(f, 0.0, cutoff, 1e-9);
        // log-spaced pieces keep the adaptive rule efficient on long intervals
        double total = detail::integrate(f, 0.0, 1.0, 1e-9);
        for (double a = 1.0; a < cutoff; a *= 4.0) total += detail::integrate(f, a, std::min(4.0 * a, cutoff), 1e-9 * std::max(1.0, a));
        return total;
    }

    double median() const {
        double lo = 0.0, hi = 1.0;
        while (cdf(hi) < 0.5) hi *= 2.0;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            (cdf(mid) < 0.5 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    /// sigma_r^2 / <r>^2.
    double variance_ratio() const {
        const double m1 = moment(1), m2 = moment(2);
        return m2 / (m1 * m1) - 1.0;
    }

private:
    double unnormalized(double r) const {
        const double b = beta();
        return std::pow(r + r * r, b) / std::pow(1.0 + r + r * r, 1.0 + 1.5 * b);
    }

    template <typename F>
    static double integral_to_infinity(F&& f) {
        const double head = detail::integrate(f, 0.0, 1.0, 1e-12);
        const double tail = detail::integrate([&](double v) { return v > 0.0 ? f(1.0 / v) / (v * v) : 0.0; }, 0.0, 1.0,
                                              1e-12);
        return head + tail;
    }

    RatioKind kind_;
    double norm_ = 1.0;
};

inline RatioLaw ratio_reference(RatioKind kind) { return RatioLaw(kind); }

// ---------------------------------------------------------------------------
// Tabulation for plot overlays

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

inline std::vector<std::pair<double, double>> tabulate(const std::function<double(double)>& f,
                                                       const std::vector<double>& grid) {
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double x : grid) out.emplace_back(x, f(x));
    return out;
}

}  // namespace randlind::oracles

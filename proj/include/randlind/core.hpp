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

// core.hpp: shared matrix aliases, ensemble coordinates and error types.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace randlind {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr cplx I{0.0, 1.0};

// Failure classes surfaced by the CLI as distinct exit codes and recorded
// for failed sweep realizations.
enum class ErrorKind {
    eigensolver,
    zero_mode,
    positivity,
    residual,
    quadrature,
    too_few_levels,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::eigensolver: return "eigensolver";
    case ErrorKind::zero_mode: return "zero_mode";
    case ErrorKind::positivity: return "positivity";
    case ErrorKind::residual: return "residual";
    case ErrorKind::quadrature: return "quadrature";
    case ErrorKind::too_few_levels: return "too_few_levels";
    }
    return "unknown";
}

class NumericalError : public std::runtime_error {
public:
    NumericalError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Effective dissipation strength g_eff = (2 r beta N)^{1/4} g.
inline double geff_from_g(int N, int beta, int r, double g) {
    return std::pow(2.0 * r * beta * N, 0.25) * g;
}

inline double g_from_geff(int N, int beta, int r, double g_eff) {
    return g_eff / std::pow(2.0 * r * beta * N, 0.25);
}

/// Ensemble coordinates of one random Liouvillian draw.
struct ModelParams {
    int N = 2;
    int beta = 2;
    int r = 1;
    double g = 1.0;
    std::uint64_t seed = 0;
    std::uint64_t realization_index = 0;

    void validate() const {
        if (N < 1) throw std::invalid_argument("ModelParams: N must be >= 1");
        if (beta != 1 && beta != 2) throw std::invalid_argument("ModelParams: beta must be 1 or 2");
        if (r < 1) throw std::invalid_argument("ModelParams: r must be >= 1");
        if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("ModelParams: g must be finite and > 0");
    }

    double g_eff() const { return geff_from_g(N, beta, r, g); }

    static ModelParams from_geff(int N, int beta, int r, double g_eff,
                                 std::uint64_t seed = 0, std::uint64_t realization = 0) {
        ModelParams p{N, beta, r, g_from_geff(N, beta, r, g_eff), seed, realization};
        p.validate();
        return p;
    }
};

// Row-stacking: vec(rho)[i*N + j] = rho(i, j), so vec(A rho B) = (A (x) B^T) vec(rho).
inline CVector vectorize(const CMatrix& rho) {
    const Eigen::Index n = rho.rows();
    CVector v(n * rho.cols());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j) v(i * rho.cols() + j) = rho(i, j);
    return v;
}

inline CMatrix devectorize(const CVector& v, Eigen::Index n) {
    if (v.size() != n * n) throw std::invalid_argument("devectorize: size is not n*n");
    CMatrix rho(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) rho(i, j) = v(i * n + j);
    return rho;
}

}  // namespace randlind

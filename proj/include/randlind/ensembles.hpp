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

// ensembles.hpp: random Hamiltonians, random traceless jump operators, the
// orthonormal operator basis and the dissipation matrix d = w w^dagger.

#pragma once

#include "core.hpp"
#include "rng.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace randlind {

/// Hermitian N x N matrix drawn from P(H) ~ exp(-Tr H^2 / 2).
/// For beta = 1 the entries are real (imaginary parts exactly zero).
struct HamiltonianMatrix {
    CMatrix entries;
    int beta = 2;

    Eigen::Index dim() const { return entries.rows(); }
};

/// Traceless jump operators W_l with the coupling g already absorbed.
struct JumpOperatorSet {
    std::vector<CMatrix> operators;
    double g = 0.0;
    int beta = 2;

    int count() const { return static_cast<int>(operators.size()); }
};

/// Orthonormal operator basis, Tr[G_i^dagger G_j] = delta_ij.
/// elements[0] is the identity over sqrt(N); elements[1..N^2-1] are traceless.
struct BasisSet {
    int N = 1;
    std::vector<CMatrix> elements;

    std::size_t size() const { return elements.size(); }
};

/// (N^2-1) x (N^2-1) Hermitian positive semi-definite matrix d = w w^dagger.
struct DissipationMatrix {
    CMatrix entries;
};

// Off-diagonal matrix units E_ab (a != b) in row-major order, followed by the
// N-1 diagonal generalized Gell-Mann matrices diag(1,..,1,-k,0,..)/sqrt(k(k+1)).
inline BasisSet make_basis(int N) {
    if (N < 1) throw std::invalid_argument("make_basis: N must be >= 1");
    BasisSet basis;
    basis.N = N;
    basis.elements.reserve(static_cast<std::size_t>(N) * N);
    basis.elements.push_back(CMatrix::Identity(N, N) / std::sqrt(static_cast<double>(N)));
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            if (a == b) continue;
            CMatrix e = CMatrix::Zero(N, N);
            e(a, b) = 1.0;
            basis.elements.push_back(std::move(e));
        }
    }
    for (int k = 1; k < N; ++k) {
        CMatrix d = CMatrix::Zero(N, N);
        const double norm = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
        for (int a = 0; a < k; ++a) d(a, a) = norm;
        d(k, k) = -k * norm;
        basis.elements.push_back(std::move(d));
    }
    return basis;
}

inline HamiltonianMatrix sample_hamiltonian(const ModelParams& params, const RealizationRng& rng) {
    params.validate();
    const int N = params.N;
    Rng gen = rng.stream(stream::hamiltonian);
    HamiltonianMatrix h;
    h.beta = params.beta;
    h.entries = CMatrix::Zero(N, N);
    // exp(-Tr H^2/2): diagonal variance 1; off-diagonal E|H_ij|^2 = 1 (beta=2), 1/2 (beta=1).
    const double off_sigma = std::sqrt(0.5);
    for (int i = 0; i < N; ++i) {
        h.entries(i, i) = gen.normal();
        for (int j = i + 1; j < N; ++j) {
            const double re = gen.normal(off_sigma);
            const double im = params.beta == 2 ? gen.normal(off_sigma) : 0.0;
            h.entries(i, j) = cplx(re, im);
            h.entries(j, i) = cplx(re, -im);
        }
    }
    return h;
}

inline CMatrix project_traceless(CMatrix w) {
    const cplx shift = w.trace() / static_cast<double>(w.rows());
    w.diagonal().array() -= shift;
    return w;
}

// Direct entrywise sampling (beta real degrees of freedom per entry, each of
// variance g^2) followed by removal of the trace. This is the same Gaussian
// measure as g * sum_j G_j w_jl with w Ginibre, at O(N^2) per operator.
inline JumpOperatorSet sample_jump_operators(const ModelParams& params, const RealizationRng& rng) {
    params.validate();
    const int N = params.N;
    JumpOperatorSet jumps;
    jumps.g = params.g;
    jumps.beta = params.beta;
    jumps.operators.reserve(params.r);
    for (int l = 0; l < params.r; ++l) {
        Rng gen = rng.stream(stream::jump(l));
        CMatrix w(N, N);
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                const double re = gen.normal(params.g);
                const double im = params.beta == 2 ? gen.normal(params.g) : 0.0;
                w(i, j) = cplx(re, im);
            }
        }
        jumps.operators.push_back(project_traceless(std::move(w)));
    }
    return jumps;
}

/// Ginibre coefficient matrix w of shape (N^2-1) x r, density ~ exp(-Tr(w^dagger w)/2).
inline CMatrix sample_coefficients(const ModelParams& params, const RealizationRng& rng) {
    params.validate();
    const Eigen::Index rows = static_cast<Eigen::Index>(params.N) * params.N - 1;
    Rng gen = rng.stream(stream::coefficients);
    CMatrix w(rows, params.r);
    for (Eigen::Index j = 0; j < rows; ++j)
        for (int l = 0; l < params.r; ++l)
            w(j, l) = cplx(gen.normal(), params.beta == 2 ? gen.normal() : 0.0);
    return w;
}

/// W_l = g * sum_{j>=1} G_j w_{jl}.
inline JumpOperatorSet jumps_from_coefficients(const BasisSet& basis, const CMatrix& w, double g, int beta) {
    const Eigen::Index traceless = static_cast<Eigen::Index>(basis.size()) - 1;
    if (w.rows() != traceless)
        throw std::invalid_argument("jumps_from_coefficients: w must have N^2-1 rows");
    JumpOperatorSet jumps;
    jumps.g = g;
    jumps.beta = beta;
    for (Eigen::Index l = 0; l < w.cols(); ++l) {
        CMatrix W = CMatrix::Zero(basis.N, basis.N);
        for (Eigen::Index j = 0; j < traceless; ++j) W += w(j, l) * basis.elements[j + 1];
        jumps.operators.push_back(g * W);
    }
    return jumps;
}

inline DissipationMatrix dissipation_matrix(const CMatrix& w) {
    const Eigen::Index rows = w.rows();
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(rows + 1))));
    if (w.cols() < 1 || n * n != rows + 1)
        throw std::invalid_argument("dissipation_matrix: w must have shape (N^2-1) x r with r >= 1");
    return DissipationMatrix{w * w.adjoint()};
}

}  // namespace randlind

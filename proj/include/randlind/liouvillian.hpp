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

// liouvillian.hpp: dense vectorized Lindblad superoperator.
//
//   L(rho) = -i[H, rho] + sum_l ( W_l rho W_l^dagger - 1/2 {W_l^dagger W_l, rho} )
//
// Vectorization is row-stacking, vec(A rho B) = (A (x) B^T) vec(rho), so
//
//   L = -i (H (x) 1 - 1 (x) H^T)
//       + sum_l [ W_l (x) conj(W_l) - 1/2 (W_l^dagger W_l) (x) 1 - 1/2 1 (x) (W_l^dagger W_l)^T ].

#pragma once

#include "core.hpp"
#include "ensembles.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace randlind {

enum class VecConvention { row_stacking };

struct Superoperator {
    CMatrix matrix;
    VecConvention convention = VecConvention::row_stacking;
    std::optional<ModelParams> params;

    Eigen::Index hilbert_dim() const {
        return static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(matrix.rows()))));
    }
    double frobenius_norm() const { return matrix.norm(); }
    CVector apply(const CVector& v) const { return matrix * v; }
};

namespace detail {

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// out += alpha * (A (x) B)
inline void accumulate_kron(CMatrix& out, const CMatrix& A, const CMatrix& B, cplx alpha) {
    const Eigen::Index ar = A.rows(), ac = A.cols(), br = B.rows(), bc = B.cols();
    for (Eigen::Index i = 0; i < ar; ++i) {
        for (Eigen::Index k = 0; k < ac; ++k) {
            const cplx a = alpha * A(i, k);
            if (a == cplx(0.0)) continue;
            out.block(i * br, k * bc, br, bc) += a * B;
        }
    }
}

// out += A (x) 1 + 1 (x) B for N x N matrices A, B.
inline void accumulate_kron_sum(CMatrix& out, const CMatrix& A, const CMatrix& B) {
    const Eigen::Index N = A.rows();
    for (Eigen::Index i = 0; i < N; ++i) {
        for (Eigen::Index k = 0; k < N; ++k) {
            const cplx a = A(i, k);
            for (Eigen::Index j = 0; j < N; ++j) out(i * N + j, k * N + j) += a;
        }
        out.block(i * N, i * N, N, N) += B;
    }
}

inline void check_hamiltonian(const CMatrix& H, const char* who) {
    if (H.rows() != H.cols()) throw std::invalid_argument(std::string(who) + ": H must be square");
    const double scale = std::max(1.0, max_abs(H));
    if (max_abs(H - H.adjoint()) > 1e-12 * scale)
        throw std::invalid_argument(std::string(who) + ": H is not Hermitian");
}

}  // namespace detail

inline Superoperator build_liouvillian(const HamiltonianMatrix& H, const JumpOperatorSet& jumps,
                                       std::optional<ModelParams> params = std::nullopt) {
    detail::check_hamiltonian(H.entries, "build_liouvillian");
    const Eigen::Index N = H.dim();
    CMatrix gamma = CMatrix::Zero(N, N);
    for (const auto& W : jumps.operators) {
        if (W.rows() != N || W.cols() != N)
            throw std::invalid_argument("build_liouvillian: jump operator dimension mismatch");
        gamma.noalias() += W.adjoint() * W;
    }

    Superoperator L;
    L.params = params;
    L.matrix = CMatrix::Zero(N * N, N * N);
    const CMatrix left = -I * H.entries - 0.5 * gamma;
    const CMatrix right = I * H.entries.transpose() - 0.5 * gamma.transpose();
    detail::accumulate_kron_sum(L.matrix, left, right);
    for (const auto& W : jumps.operators) detail::accumulate_kron(L.matrix, W, W.conjugate(), 1.0);
    return L;
}

/// L(rho) evaluated on the N x N matrix directly, without vectorization.
inline CMatrix apply_direct(const HamiltonianMatrix& H, const JumpOperatorSet& jumps, const CMatrix& rho) {
    const Eigen::Index N = H.dim();
    if (rho.rows() != N || rho.cols() != N) throw std::invalid_argument("apply_direct: rho dimension mismatch");
    CMatrix out = -I * (H.entries * rho - rho * H.entries);
    for (const auto& W : jumps.operators) {
        if (W.rows() != N || W.cols() != N)
            throw std::invalid_argument("apply_direct: jump operator dimension mismatch");
        const CMatrix wdw = W.adjoint() * W;
        out += W * rho * W.adjoint() - 0.5 * (wdw * rho + rho * wdw);
    }
    return out;
}

/// Double-sum form g^2 sum_jk d_jk [G_j rho G_k^dagger - 1/2 {G_k^dagger G_j, rho}] plus -i[H, rho].
inline Superoperator build_from_dissipation_matrix(const HamiltonianMatrix& H, const BasisSet& basis,
                                                   const DissipationMatrix& d, double g) {
    detail::check_hamiltonian(H.entries, "build_from_dissipation_matrix");
    const Eigen::Index N = H.dim();
    const Eigen::Index m = static_cast<Eigen::Index>(basis.size()) - 1;
    if (basis.N != N) throw std::invalid_argument("build_from_dissipation_matrix: basis dimension mismatch");
    if (d.entries.rows() != m || d.entries.cols() != m)
        throw std::invalid_argument("build_from_dissipation_matrix: d must be (N^2-1) x (N^2-1)");

    Superoperator L;
    L.matrix = CMatrix::Zero(N * N, N * N);
    detail::accumulate_kron_sum(L.matrix, -I * H.entries, I * H.entries.transpose());

    const double g2 = g * g;
    CMatrix anti = CMatrix::Zero(N, N);
    for (Eigen::Index j = 0; j < m; ++j) {
        const CMatrix& Gj = basis.elements[j + 1];
        for (Eigen::Index k = 0; k < m; ++k) {
            const cplx c = g2 * d.entries(j, k);
            if (c == cplx(0.0)) continue;
            const CMatrix& Gk = basis.elements[k + 1];
            detail::accumulate_kron(L.matrix, Gj, Gk.conjugate(), c);
            anti.noalias() += c * (Gk.adjoint() * Gj);
        }
    }
    detail::accumulate_kron_sum(L.matrix, -0.5 * anti, -0.5 * anti.transpose());
    return L;
}

// ---------------------------------------------------------------------------
// Binary dump.
//
//   offset  size  field
//   0       8     magic "RLSUPOP1"
//   8       8     int64   N
//   16      8     int64   beta      (0 when unknown)
//   24      8     int64   r         (0 when unknown)
//   32      8     float64 g         (0 when unknown)
//   40      8     uint64  seed
//   48      8     uint64  realization index
//   56      8     convention tag "ROWSTACK"
//   64      16*N^4 row-major (re, im) float64 pairs
//
// All integers and floats little-endian.

namespace detail {

inline void put_u64(std::ostream& os, std::uint64_t v) {
    std::array<char, 8> bytes{};
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xffu);
    os.write(bytes.data(), 8);
}

inline std::uint64_t get_u64(std::istream& is) {
    std::array<unsigned char, 8> bytes{};
    is.read(reinterpret_cast<char*>(bytes.data()), 8);
    if (!is) throw IoError("superoperator dump: truncated stream");
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = (v << 8) | bytes[b];
    return v;
}

inline void put_f64(std::ostream& os, double x) { put_u64(os, std::bit_cast<std::uint64_t>(x)); }
inline double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace detail

inline constexpr char kDumpMagic[9] = "RLSUPOP1";
inline constexpr char kRowStackTag[9] = "ROWSTACK";

inline void write_superoperator(std::ostream& os, const Superoperator& L) {
    const ModelParams p = L.params.value_or(ModelParams{static_cast<int>(L.hilbert_dim()), 0, 0, 0.0, 0, 0});
    os.write(kDumpMagic, 8);
    detail::put_u64(os, static_cast<std::uint64_t>(L.hilbert_dim()));
    detail::put_u64(os, static_cast<std::uint64_t>(p.beta));
    detail::put_u64(os, static_cast<std::uint64_t>(p.r));
    detail::put_f64(os, p.g);
    detail::put_u64(os, p.seed);
    detail::put_u64(os, p.realization_index);
    os.write(kRowStackTag, 8);
    for (Eigen::Index i = 0; i < L.matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < L.matrix.cols(); ++j) {
            detail::put_f64(os, L.matrix(i, j).real());
            detail::put_f64(os, L.matrix(i, j).imag());
        }
    }
    if (!os) throw IoError("superoperator dump: write failed");
}

inline Superoperator read_superoperator(std::istream& is) {
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kDumpMagic, 8) != 0) throw IoError("superoperator dump: bad magic");
    ModelParams p;
    p.N = static_cast<int>(detail::get_u64(is));
    p.beta = static_cast<int>(detail::get_u64(is));
    p.r = static_cast<int>(detail::get_u64(is));
    p.g = detail::get_f64(is);
    p.seed = detail::get_u64(is);
    p.realization_index = detail::get_u64(is);
    if (p.N < 1 || p.N > 1024) throw IoError("superoperator dump: implausible dimension N=" + std::to_string(p.N));
    char tag[8];
    is.read(tag, 8);
    if (!is || std::memcmp(tag, kRowStackTag, 8) != 0)
        throw IoError("superoperator dump: unsupported vectorization convention");
    const Eigen::Index n = static_cast<Eigen::Index>(p.N) * p.N;
    Superoperator L;
    L.matrix.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double re = detail::get_f64(is);
            const double im = detail::get_f64(is);
            L.matrix(i, j) = cplx(re, im);
        }
    }
    if (p.beta != 0) L.params = p;
    return L;
}

}  // namespace randlind

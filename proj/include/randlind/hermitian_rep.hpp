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

// hermitian_rep.hpp: real representation of a hermiticity-preserving
// superoperator in the orthonormal Hermitian operator basis
//
//   F = { E_aa }  U  { (E_ab + E_ba)/sqrt2, i(E_ab - E_ba)/sqrt2 : a < b }.
//
// M_mn = Tr[F_m L(F_n)] is real and unitarily similar to the row-stacked
// complex matrix, so both have the same spectrum. A coefficient vector x in
// this basis maps back to vec(rho) = sum_m x_m vec(F_m).

#pragma once

#include "core.hpp"
#include "liouvillian.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace randlind {

class HermitianBasisMap {
public:
    struct Entry {
        Eigen::Index index;
        cplx coeff;
    };
    struct Column {
        std::array<Entry, 2> entries;
        int count;
    };

    explicit HermitianBasisMap(Eigen::Index N) : N_(N) {
        columns_.reserve(static_cast<std::size_t>(N * N));
        const double s = 1.0 / std::sqrt(2.0);
        for (Eigen::Index a = 0; a < N; ++a) {
            columns_.push_back(Column{{Entry{a * N + a, 1.0}, Entry{0, 0.0}}, 1});
            diagonal_.push_back(static_cast<Eigen::Index>(columns_.size()) - 1);
        }
        for (Eigen::Index a = 0; a < N; ++a) {
            for (Eigen::Index b = a + 1; b < N; ++b) {
                columns_.push_back(Column{{Entry{a * N + b, s}, Entry{b * N + a, s}}, 2});
                columns_.push_back(Column{{Entry{a * N + b, I * s}, Entry{b * N + a, -I * s}}, 2});
            }
        }
    }

    Eigen::Index hilbert_dim() const { return N_; }
    Eigen::Index size() const { return N_ * N_; }
    const std::vector<Eigen::Index>& diagonal_indices() const { return diagonal_; }

    /// M = V^dagger L V, with the imaginary residue (zero in exact arithmetic) reported.
    RMatrix to_real(const CMatrix& L, double* max_imag = nullptr) const {
        const Eigen::Index n = size();
        RMatrix M(n, n);
        CVector y(n);
        double worst = 0.0;
        for (Eigen::Index col = 0; col < n; ++col) {
            const Column& c = columns_[col];
            y = c.entries[0].coeff * L.col(c.entries[0].index);
            if (c.count == 2) y += c.entries[1].coeff * L.col(c.entries[1].index);
            for (Eigen::Index row = 0; row < n; ++row) {
                const Column& rr = columns_[row];
                cplx v = std::conj(rr.entries[0].coeff) * y(rr.entries[0].index);
                if (rr.count == 2) v += std::conj(rr.entries[1].coeff) * y(rr.entries[1].index);
                M(row, col) = v.real();
                worst = std::max(worst, std::abs(v.imag()));
            }
        }
        if (max_imag) *max_imag = worst;
        return M;
    }

    /// vec(rho) = sum_m x_m vec(F_m) for real or complex coefficients x.
    template <typename Derived>
    CVector to_vec(const Eigen::MatrixBase<Derived>& x) const {
        CVector v = CVector::Zero(size());
        for (Eigen::Index m = 0; m < size(); ++m) {
            const Column& c = columns_[m];
            const cplx xm = x(m);
            for (int e = 0; e < c.count; ++e) v(c.entries[e].index) += c.entries[e].coeff * xm;
        }
        return v;
    }

private:
    Eigen::Index N_;
    std::vector<Column> columns_;
    std::vector<Eigen::Index> diagonal_;
};

}  // namespace randlind

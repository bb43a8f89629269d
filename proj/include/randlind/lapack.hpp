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

// lapack.hpp: thin LAPACKE wrappers over column-major Eigen storage.

#pragma once

#include "core.hpp"

#include <lapacke.h>

#include <string>
#include <vector>

namespace randlind::lapack {

inline void check(lapack_int info, const char* routine) {
    if (info != 0)
        throw NumericalError(ErrorKind::eigensolver,
                             std::string(routine) + " failed with info = " + std::to_string(info));
}

/// Balanced upper-Hessenberg reduction of a real square matrix, kept around
/// so that selected eigenvectors can be mapped back to the original basis.
class HessenbergReduction {
public:
    explicit HessenbergReduction(RMatrix a) : reflectors_(std::move(a)) {
        const lapack_int n = static_cast<lapack_int>(reflectors_.rows());
        scale_.resize(n);
        tau_.resize(n > 1 ? n - 1 : 1);
        check(LAPACKE_dgebal(LAPACK_COL_MAJOR, 'B', n, reflectors_.data(), n, &ilo_, &ihi_, scale_.data()),
              "dgebal");
        check(LAPACKE_dgehrd(LAPACK_COL_MAJOR, n, ilo_, ihi_, reflectors_.data(), n, tau_.data()), "dgehrd");
        hessenberg_ = reflectors_;
        for (lapack_int j = 0; j < n; ++j)
            for (lapack_int i = j + 2; i < n; ++i) hessenberg_(i, j) = 0.0;
    }

    lapack_int n() const { return static_cast<lapack_int>(hessenberg_.rows()); }

    /// All eigenvalues (real parts, imaginary parts); conjugate pairs adjacent, positive imaginary first.
    void eigenvalues(std::vector<double>& wr, std::vector<double>& wi) const {
        const lapack_int n = this->n();
        RMatrix t = hessenberg_;
        wr.assign(n, 0.0);
        wi.assign(n, 0.0);
        double dummy = 0.0;
        check(LAPACKE_dhseqr(LAPACK_COL_MAJOR, 'E', 'N', n, ilo_, ihi_, t.data(), n, wr.data(), wi.data(),
                             &dummy, 1),
              "dhseqr");
    }

    /// Right eigenvectors for the selected eigenvalues, in the original
    /// (pre-balancing, pre-reduction) basis. A complex eigenvalue j with
    /// wi[j] > 0 yields two columns (real part, imaginary part).
    /// Returns per-selected-eigenvalue convergence flags in `failed`.
    RMatrix eigenvectors(std::vector<lapack_logical> select, const std::vector<double>& wr,
                         const std::vector<double>& wi, std::vector<bool>* failed = nullptr) const {
        const lapack_int n = this->n();
        lapack_int columns = 0;
        for (lapack_int j = 0; j < n; ++j) {
            if (!select[j]) continue;
            if (wi[j] == 0.0) {
                ++columns;
            } else {
                // normalize selection onto the first element of the pair
                if (wi[j] < 0.0) {
                    select[j] = 0;
                    select[j - 1] = 1;
                }
            }
        }
        for (lapack_int j = 0; j < n; ++j)
            if (select[j] && wi[j] > 0.0) columns += 2;

        std::vector<double> wr_copy = wr;
        const std::vector<double> wi_copy = wi;
        RMatrix vr = RMatrix::Zero(n, columns);
        std::vector<lapack_int> ifaill(columns), ifailr(columns);
        lapack_int m = 0;
        double dummy = 0.0;
        lapack_int info = LAPACKE_dhsein(LAPACK_COL_MAJOR, 'R', 'Q', 'N', select.data(), n, hessenberg_.data(), n,
                                        wr_copy.data(), wi_copy.data(), &dummy, 1, vr.data(), n, columns, &m,
                                        ifaill.data(), ifailr.data());
        if (info < 0) check(info, "dhsein");
        if (failed) {
            failed->assign(columns, false);
            for (lapack_int k = 0; k < columns; ++k) (*failed)[k] = ifailr[k] != 0;
        }
        check(LAPACKE_dormhr(LAPACK_COL_MAJOR, 'L', 'N', n, columns, ilo_, ihi_, reflectors_.data(), n,
                             tau_.data(), vr.data(), n),
              "dormhr");
        check(LAPACKE_dgebak(LAPACK_COL_MAJOR, 'B', 'R', n, ilo_, ihi_, scale_.data(), columns, vr.data(), n),
              "dgebak");
        return vr;
    }

private:
    RMatrix reflectors_;
    RMatrix hessenberg_;
    std::vector<double> scale_;
    std::vector<double> tau_;
    lapack_int ilo_ = 1;
    lapack_int ihi_ = 1;
};

/// Solves A x = b in place (b overwritten by x). A is destroyed.
inline void solve(RMatrix& a, RVector& b) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    std::vector<lapack_int> ipiv(n);
    const lapack_int info = LAPACKE_dgesv(LAPACK_COL_MAJOR, n, 1, a.data(), n, ipiv.data(), b.data(), n);
    if (info > 0) throw NumericalError(ErrorKind::zero_mode, "dgesv: singular system (degenerate zero mode)");
    check(info, "dgesv");
}

}  // namespace randlind::lapack

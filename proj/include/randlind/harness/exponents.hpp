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

// harness/exponents.hpp: scaling-exponent records and the constraint
//   lambda (kappa_> - kappa_<) = nu_D - nu_P
// tying the regime exponents of one observable together.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace randlind::harness {

struct ExponentRecord {
    std::string observable;  // "X", "Delta", "sigma2_rho0"
    std::string r_class;     // "r=1" or "r>1"
    std::optional<double> nu_P, nu_C, nu_D;
    std::optional<double> lambda;
    std::optional<double> kappa_lt, kappa_gt;

    bool complete() const { return nu_P && nu_C && nu_D && lambda && kappa_lt && kappa_gt; }
};

struct ConstraintCheck {
    bool ok = false;
    double residual = 0.0;  // lambda (kappa_> - kappa_<) - (nu_D - nu_P)
};

inline constexpr double kConstraintTolerance = 1e-12;

inline ConstraintCheck check_exponent_constraint(const ExponentRecord& rec) {
    if (!rec.complete())
        throw std::invalid_argument("check_exponent_constraint: " + rec.observable + " (" + rec.r_class +
                                    ") has undefined exponents");
    ConstraintCheck c;
    c.residual = *rec.lambda * (*rec.kappa_gt - *rec.kappa_lt) - (*rec.nu_D - *rec.nu_P);
    c.ok = std::abs(c.residual) <= kConstraintTolerance;
    return c;
}

/// Regime exponents of X, Delta and sigma^2 of rho_0 for r = 1 and r > 1.
/// lambda of Delta at r > 1 is not defined (no crossover power law).
inline std::vector<ExponentRecord> builtin_exponent_table() {
    return {
        {"X", "r=1", 0.0, 0.5, 0.5, 2.0, -0.25, 0.0},
        {"Delta", "r=1", 0.5, 0.5, -1.5, -8.0 / 3.0, 0.0, 0.75},
        {"sigma2_rho0", "r=1", -3.0, -2.0, -1.0, 8.0 / 5.0, -0.5, 0.75},
        {"X", "r>1", 0.0, 0.5, 0.5, 2.0, -0.25, 0.0},
        {"Delta", "r>1", 0.5, 0.5, 0.5, std::nullopt, 0.0, 0.0},
        {"sigma2_rho0", "r>1", -3.0, -2.0, -2.0, 2.0, -0.5, 0.0},
    };
}

}  // namespace randlind::harness

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

// Ensemble-level scaling checks at moderate N. Slow; labelled separately in ctest.

#include <randlind/randlind.hpp>

#include <gtest/gtest.h>

#include <cmath>

namespace {

using namespace randlind;

struct Sampled {
    HamiltonianMatrix H;
    JumpOperatorSet W;
    Superoperator L;
};

Sampled sample(const ModelParams& p) {
    const RealizationRng rng(p);
    Sampled s{sample_hamiltonian(p, rng), sample_jump_operators(p, rng), {}};
    s.L = build_liouvillian(s.H, s.W, p);
    return s;
}

// Tr L = -N sum_l Tr W_l^dagger W_l for traceless W, and E Tr W^dagger W = beta g^2 (N^2 - 1),
// so E R = -beta r g^2 (N^2 - 1) / N.
TEST(EnsembleScaling, MeanRealPartMatchesTraceFormula) {
    for (int beta : {1, 2})
        for (int r : {1, 3}) {
            const int N = 12;
            const double g = 0.4;
            std::vector<double> R;
            for (std::uint64_t k = 0; k < 60; ++k) {
                const Sampled s = sample(ModelParams{N, beta, r, g, 31, k});
                R.push_back(s.L.matrix.trace().real() / (N * N));
            }
            const double expected = -beta * r * g * g * (N * N - 1.0) / N;
            EXPECT_NEAR(stats::mean(R), expected, 4.0 * stats::standard_error(R)) << "beta=" << beta << " r=" << r;
        }
}

// At vanishing coupling the imaginary parts are the Bohr frequencies E_m - E_n, so
// Y^2 = 2 (Tr H^2 / N - (Tr H / N)^2) up to corrections of order g^2.
TEST(EnsembleScaling, ImaginarySpreadFollowsHamiltonian) {
    const int N = 20;
    const ModelParams p = ModelParams::from_geff(N, 2, 2, 0.01, 32, 0);
    const Sampled s = sample(p);
    const SpectralSummary m = summarize(diagonalize(s.L), p);
    const double t1 = s.H.entries.trace().real() / N;
    const double t2 = (s.H.entries * s.H.entries).trace().real() / N;
    EXPECT_NEAR(m.Y * m.Y, 2.0 * (t2 - t1 * t1), 1e-3 * m.Y * m.Y);
    // and the ensemble value of that quantity is beta N (1 - 1/N^2) on average
    EXPECT_NEAR(m.Y * m.Y / (2.0 * N), 1.0, 0.25);
}

// Weak dissipation: N P_0 - 1 shrinks as N grows at fixed g_eff sqrt(beta N).
TEST(EnsembleScaling, WeakCouplingSteadyStateApproachesFullyMixed) {
    double previous = std::numeric_limits<double>::infinity();
    for (int N : {10, 20, 30}) {
        std::vector<double> excess;
        for (std::uint64_t k = 0; k < 8; ++k) {
            const ModelParams p = ModelParams::from_geff(N, 2, 2, 0.02 / std::sqrt(2.0 * N), 33, k);
            const SteadyState ss = solve_steady_state(sample(p).L);
            excess.push_back(N * purity_and_variance(ss).purity - 1.0);
        }
        const double e = stats::mean(excess);
        EXPECT_GT(e, 0.0);
        EXPECT_LT(e, previous) << "N=" << N;
        previous = e;
    }
}

// Strong dissipation with r > 1: N P_0 stays of order one.
TEST(EnsembleScaling, StrongCouplingPurityScalesAsInverseN) {
    for (int N : {10, 20, 30}) {
        std::vector<double> np;
        for (std::uint64_t k = 0; k < 8; ++k) {
            const ModelParams p = ModelParams::from_geff(N, 2, 2, 100.0, 34, k);
            np.push_back(N * purity_and_variance(solve_steady_state(sample(p).L)).purity);
        }
        const double v = stats::mean(np);
        EXPECT_GT(v, 1.0) << "N=" << N;
        EXPECT_LT(v, 4.0) << "N=" << N;
    }
}

// Both steady-state routes agree at a size where the dense eigensolver is already costly.
TEST(EnsembleScaling, SteadyRoutesAgreeAtModerateN) {
    const ModelParams p = ModelParams::from_geff(30, 1, 2, 1.0, 35, 0);
    const Sampled s = sample(p);
    const SteadyState a = extract_steady_state(s.L, diagonalize(s.L));
    const SteadyState b = solve_steady_state(s.L);
    EXPECT_LE((a.rho - b.rho).norm(), 1e-9);
}

}  // namespace

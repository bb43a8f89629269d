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

// Acceptance run: one PASS/FAIL line per criterion on stdout, details on stderr.
//
//   acceptance            run all criteria
//   acceptance 3 7        run a subset
//
// Scratch output goes to $RANDLIND_ACCEPTANCE_DIR (default: a temp directory),
// wiped at start. Exit status is 1 if any criterion that ran failed.

#include <randlind/randlind.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

namespace fs = std::filesystem;
using namespace randlind;
using harness::SweepConfig;
using harness::SweepResult;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Context {
    fs::path scratch;
    double c3_sweep_seconds = -1.0;  // filled by criterion 3, reported by 11
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

double match_distance(std::vector<cplx> a, std::vector<cplx> b) {
    double worst = 0.0;
    for (cplx x : a) {
        auto it = std::min_element(b.begin(), b.end(), [&](cplx u, cplx v) { return std::abs(u - x) < std::abs(v - x); });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

struct Instance {
    ModelParams p;
    HamiltonianMatrix H;
    JumpOperatorSet W;
    Superoperator L;
};

Instance make_instance(const ModelParams& p) {
    const RealizationRng rng(p);
    Instance in{p, sample_hamiltonian(p, rng), sample_jump_operators(p, rng), {}};
    in.L = build_liouvillian(in.H, in.W, p);
    return in;
}

SweepResult sweep(Context& ctx, const std::string& name, SweepConfig cfg) {
    cfg.output_dir = (ctx.scratch / name).string();
    return harness::run_sweep(cfg);
}

// Mean of gap / scale over the successful records of (N, point 0).
double mean_scaled_gap(const SweepResult& res, int N, const std::function<double(const harness::Record&)>& scale) {
    std::vector<double> v;
    for (const auto* r : res.at(N, 0)) v.push_back(*r->gap / scale(*r));
    return stats::mean(v);
}

// ---------------------------------------------------------------------------

Outcome structural_invariants(Context&) {
    double worst_trace = 0.0, worst_conj = 0.0, worst_sum = 0.0, worst_dform = 0.0;
    int count = 0;
    for (int i = 0; i < 200; ++i) {
        const int N = 2 + i % 7;
        const int beta = 1 + (i / 7) % 2;
        const int r = 1 + (i / 14) % 3;
        const double g_eff = std::pow(10.0, -1.0 + (i % 5) * 0.5);
        const ModelParams p = ModelParams::from_geff(N, beta, r, g_eff, 101, static_cast<std::uint64_t>(i));
        const RealizationRng rng(p);
        const HamiltonianMatrix H = sample_hamiltonian(p, rng);
        const BasisSet basis = make_basis(N);
        const CMatrix w = sample_coefficients(p, rng);
        const Superoperator L = build_liouvillian(H, jumps_from_coefficients(basis, w, p.g, beta), p);
        const double nrm = L.frobenius_norm();

        const CVector one = vectorize(CMatrix::Identity(N, N));
        worst_trace = std::max(worst_trace, (one.adjoint() * L.matrix).norm() / nrm);

        const Spectrum s = diagonalize(L);
        std::vector<cplx> conj(s.eigenvalues);
        for (cplx& v : conj) v = std::conj(v);
        worst_conj = std::max(worst_conj, match_distance(s.eigenvalues, conj) / nrm);
        const cplx sum = std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), cplx(0.0));
        worst_sum = std::max(worst_sum, std::abs(sum - L.matrix.trace()) / nrm);

        const Superoperator Ld = build_from_dissipation_matrix(H, basis, dissipation_matrix(w), p.g);
        worst_dform = std::max(worst_dform, (Ld.matrix - L.matrix).norm() / nrm);
        ++count;
    }
    const bool ok = worst_trace <= 1e-10 && worst_conj <= 1e-10 && worst_sum <= 1e-8 && worst_dform <= 1e-10;
    return {ok, fmt("%d instances; max relative: trace %.2e, conjugation %.2e, eigenvalue sum %.2e, d-form %.2e", count,
                    worst_trace, worst_conj, worst_sum, worst_dform)};
}

Outcome zero_mode_and_steady_state(Context&) {
    bool ok = true;
    double worst_zero = 0.0, worst_herm = 0.0, worst_res = 0.0, worst_min_p = 1.0;
    for (int N : {10, 20, 40}) {
        for (double g_eff : {0.01, 1.0, 100.0}) {
            const Instance in = make_instance(ModelParams::from_geff(N, 2, 2, g_eff, 202, 0));
            const double nrm = in.L.frobenius_norm();
            Spectrum s;
            try {
                s = diagonalize(in.L);
            } catch (const NumericalError& e) {
                std::cerr << "  N=" << N << " g_eff=" << g_eff << ": " << e.what() << '\n';
                ok = false;
                continue;
            }
            ok = ok && s.zero_mode_unique;
            worst_zero = std::max(worst_zero, std::abs(s.zero_mode()) / nrm);
            // Hermiticity of the raw zero-mode vector, before any symmetrization.
            CMatrix raw = devectorize(*s.zero_mode_vector, N);
            raw /= raw.trace();
            worst_herm = std::max(worst_herm, (raw - raw.adjoint()).norm() / raw.norm());
            const SteadyState ss = extract_steady_state(in.L, s);
            worst_min_p = std::min(worst_min_p, ss.min_eigenvalue);
            worst_res = std::max(worst_res, (in.L.matrix * vectorize(ss.rho)).norm() / nrm);
        }
    }
    ok = ok && worst_zero <= 1e-10 && worst_herm <= 1e-8 && worst_min_p >= -1e-8 && worst_res <= 1e-8;
    return {ok, fmt("max |Lambda_0|/|L| %.2e, non-Hermiticity %.2e, min p %.3e, residual/|L| %.2e", worst_zero,
                    worst_herm, worst_min_p, worst_res)};
}

Outcome strong_dissipation_gap(Context& ctx) {
    bool ok = true;
    std::string detail;
    for (int r : {2, 4}) {
        SweepConfig cfg;
        cfg.N_list = {20, 30, 40};
        cfg.r = r;
        cfg.grid = {450.0};
        cfg.realizations = 20;
        cfg.seed = 303;
        // steady observables feed criterion 10's r = 2 contrast
        cfg.observables = r == 2 ? std::vector<std::string>{"spectrum", "steady"} : std::vector<std::string>{"spectrum"};
        const auto t0 = std::chrono::steady_clock::now();
        const SweepResult res = sweep(ctx, "gap_strong_r" + std::to_string(r), cfg);
        if (r == 2) ctx.c3_sweep_seconds = seconds_since(t0);
        std::map<int, double> scaled;
        for (int N : cfg.N_list)
            scaled[N] = mean_scaled_gap(res, N, [](const harness::Record& rec) { return 2.0 * rec.N * rec.g * rec.g; });
        const auto ex = harness::extrapolate_largeN(scaled, 2);
        const double target = std::pow(1.0 - std::sqrt(double(r)), 2);
        const double rel = std::abs(ex.intercept - target) / target;
        ok = ok && rel <= 0.15 && res.failed() == 0;
        detail += fmt("r=%d: N=20,30,40 -> %.4f %.4f %.4f, extrapolated %.4f vs %.5f (%.1f%%, failed %zu); ", r,
                      scaled[20], scaled[30], scaled[40], ex.intercept, target, 100 * rel, res.failed());
    }
    return {ok, detail};
}

Outcome weak_dissipation_gap(Context& ctx) {
    bool ok = true;
    std::string detail;
    for (auto [r, tol] : {std::pair{10, 0.15}, std::pair{2, 0.35}}) {
        SweepConfig cfg;
        cfg.N_list = {40};
        cfg.r = r;
        cfg.grid = {0.01};
        cfg.realizations = 20;
        cfg.seed = 404;
        cfg.observables = {"spectrum"};
        const SweepResult res = sweep(ctx, "gap_weak_r" + std::to_string(r), cfg);
        const double v =
            mean_scaled_gap(res, 40, [](const harness::Record& rec) { return 2.0 * rec.N * rec.g * rec.g; }) / r;
        ok = ok && std::abs(v - 1.0) <= tol && res.failed() == 0;
        detail += fmt("r=%d: <Delta>/(beta N r g^2) = %.4f (tolerance %.2f); ", r, v, tol);
    }
    return {ok, detail};
}

Outcome imaginary_density(Context& ctx) {
    SweepConfig cfg;
    cfg.N_list = {60};
    cfg.r = 2;
    cfg.grid = {0.0045};
    cfg.realizations = 10;
    cfg.seed = 505;
    cfg.observables = {"eigenvalues"};
    const SweepResult res = sweep(ctx, "density_P", cfg);
    std::vector<double> im;
    std::vector<std::vector<double>> re_by_realization;
    for (const auto* r : res.at(60, 0)) {
        im.insert(im.end(), r->eig_im.begin(), r->eig_im.end());
        re_by_realization.push_back(r->eig_re);
    }
    const oracles::SemicircleConvolution conv(std::sqrt(2.0 * 2 * 60));
    // tabulate the cdf once; linear interpolation error is far below the KS bound
    const std::size_t grid_points = 4001;
    const double E2 = 2.0 * conv.endpoint();
    std::vector<double> xs(grid_points), cs(grid_points);
    for (std::size_t k = 0; k < grid_points; ++k) {
        xs[k] = -E2 + 2.0 * E2 * k / (grid_points - 1);
        cs[k] = conv.cdf(xs[k]);
    }
    const double ks = stats::ks_statistic(im, [&](double x) { return harness::detail::interp(xs, cs, x); });

    // Normality of the real-part density. The N^2 real parts of one realization are
    // built from only N single-level rates, so they are far from independent; test a
    // pooled subsample of N/2 values per realization instead (zero mode dropped).
    std::vector<double> re_sample;
    Rng pick(5050);
    for (auto re : re_by_realization) {
        re.erase(std::max_element(re.begin(), re.end()));
        for (int k = 0; k < 60 / 2; ++k) {
            const std::size_t j = k + static_cast<std::size_t>(pick.uniform() * (re.size() - k));
            std::swap(re[k], re[std::min(j, re.size() - 1)]);
            re_sample.push_back(re[k]);
        }
    }
    const double worst_p = stats::anderson_darling_normality(re_sample).p_value;
    const bool normal_ok = worst_p > 0.01;
    const bool ok = ks <= 0.05 && normal_ok && res.failed() == 0 && re_by_realization.size() >= 10;
    return {ok, fmt("%zu eigenvalues pooled from %zu realizations: KS(Im) = %.4f (<= 0.05); "
                    "AD p-value of Re on %zu subsampled values = %.3g (> 0.01)",
                    im.size(), re_by_realization.size(), ks, re_sample.size(), worst_p)};
}

// Mean steady-state variance per N with the LU route; g_eff chosen per N.
std::map<int, double> steady_variance(const std::vector<int>& Ns, int r, const std::function<double(int)>& g_eff,
                                      int realizations, std::uint64_t seed) {
    std::map<int, double> out;
    for (int N : Ns) {
        std::vector<double> v;
        for (int k = 0; k < realizations; ++k) {
            const Instance in = make_instance(ModelParams::from_geff(N, 2, r, g_eff(N), seed, static_cast<std::uint64_t>(k)));
            v.push_back(purity_and_variance(solve_steady_state(in.L)).variance);
        }
        out[N] = stats::mean(v);
    }
    return out;
}

double log_slope(const std::map<int, double>& values) {
    std::vector<double> x, y;
    for (auto [N, v] : values) {
        x.push_back(std::log(double(N)));
        y.push_back(std::log(v));
    }
    return stats::linear_fit(x, y).slope;
}

Outcome steady_variance_scaling(Context&) {
    const std::vector<int> Ns{20, 30, 40, 60};
    const auto weak = steady_variance(Ns, 2, [](int N) { return 0.02 / std::sqrt(2.0 * N); }, 10, 606);
    const auto strong = steady_variance(Ns, 2, [](int) { return 10.0; }, 10, 607);
    const double nu_weak = log_slope(weak), nu_strong = log_slope(strong);
    const bool ok = std::abs(nu_weak + 3.0) <= 0.3 && std::abs(nu_strong + 2.0) <= 0.3;
    return {ok, fmt("exponent at g_eff sqrt(2N) = 0.02: %.3f (-3 +- 0.3); at g_eff = 10: %.3f (-2 +- 0.3)", nu_weak,
                    nu_strong)};
}

Outcome ratio_statistics(Context& ctx) {
    const int N = 60;
    bool ok = true;
    std::string detail;
    for (double scaled : {10.0, 0.02}) {
        SweepConfig cfg;
        cfg.N_list = {N};
        cfg.r = 2;
        cfg.grid = {scaled / std::sqrt(double(N))};
        cfg.realizations = 40;
        cfg.seed = 707;
        cfg.observables = {"ratios"};
        cfg.steady_route = "lu";
        const SweepResult res = sweep(ctx, scaled > 1.0 ? "ratios_D" : "ratios_P", cfg);
        std::vector<double> ratios;
        for (const auto* r : res.at(N, 0)) ratios.insert(ratios.end(), r->ratios.begin(), r->ratios.end());
        const double m = stats::mean(ratios), var = stats::variance(ratios);
        if (scaled > 1.0) {
            const oracles::RatioLaw gue(oracles::RatioKind::gue_surmise);
            const double vr = var / (m * m), target = oracles::gue_ratio_variance_target();
            const double ks = stats::ks_statistic(ratios, [&](double x) { return gue.cdf(x); });
            ok = ok && std::abs(vr - target) / target <= 0.10 && ks <= 0.05;
            detail += fmt("g_eff sqrt(N) = %.2f: %zu ratios, sigma^2/<r>^2 = %.4f vs %.4f (%.1f%%), KS(surmise) = %.4f; ",
                          scaled, ratios.size(), vr, target, 100 * std::abs(vr - target) / target, ks);
        } else {
            const oracles::RatioLaw poisson(oracles::RatioKind::poisson);
            const double ks = stats::ks_statistic(ratios, [&](double x) { return poisson.cdf(x); });
            ok = ok && ks <= 0.05;
            detail += fmt("g_eff sqrt(N) = %.2f: %zu ratios, KS(Poisson) = %.4f; ", scaled, ratios.size(), ks);
        }
        ok = ok && res.failed() == 0;
    }
    return {ok, detail};
}

Outcome classical_generator(Context&) {
    const int N = 60;
    bool ok = true;
    std::string detail;
    double worst_sum = 0.0, worst_p = 1.0;
    for (int beta : {1, 2}) {
        for (int r : {1, 2, 5}) {
            std::vector<double> entries;
            std::uint64_t k = 0;
            while (entries.size() < 100000) {
                const ModelParams p{N, beta, r, 1.0, 808, k++};
                const RealizationRng rng(p);
                const auto H = sample_hamiltonian(p, rng);
                const auto A = oracles::classical_generator(oracles::in_eigenbasis(H, sample_jump_operators(p, rng)));
                for (Eigen::Index m = 0; m < N; ++m) worst_sum = std::max(worst_sum, std::abs(A.A.col(m).sum()));
                const auto off = A.off_diagonal();
                entries.insert(entries.end(), off.begin(), off.end());
            }
            const auto law = oracles::chi2_entry_law(r * beta, 1.0);
            const double d = stats::ks_statistic(entries, [&](double a) { return law.cdf(a); });
            const double pv = stats::ks_pvalue(d, double(entries.size()));
            worst_p = std::min(worst_p, pv);
            ok = ok && pv > 0.01;
        }
    }
    // gap against N k g^2, k = r beta, at r = 10
    std::vector<double> gaps;
    const int beta = 2, r = 10;
    const double g = 0.3;
    for (std::uint64_t k = 0; k < 20; ++k) {
        const ModelParams p{N, beta, r, g, 809, k};
        const RealizationRng rng(p);
        const auto H = sample_hamiltonian(p, rng);
        gaps.push_back(oracles::classical_generator(oracles::in_eigenbasis(H, sample_jump_operators(p, rng))).gap());
    }
    const double ratio = stats::mean(gaps) / (N * r * beta * g * g);
    ok = ok && worst_sum <= 1e-12 && std::abs(ratio - 1.0) <= 0.15;
    detail = fmt("smallest KS p-value over beta in {1,2}, r in {1,2,5}: %.3g (> 0.01); max |column sum| %.2e; "
                 "<gap>/(N k g^2) at r=10, beta=2: %.4f",
                 worst_p, worst_sum, ratio);
    return {ok, detail};
}

Outcome oracle_consistency(Context&) {
    const oracles::MpConvolution mp(1.0);
    double worst_series = 0.0;
    for (int n = 1; n <= 6; ++n) worst_series = std::max(worst_series, std::abs(mp.moment(n) - mp.series_moment(n)));
    const oracles::MarchenkoPasturLaw law{1.0};
    const double expected[] = {1, 1, 2, 5, 14, 42};  // n = 0..5
    double worst_mp = 0.0;
    for (int n = 0; n <= 5; ++n) worst_mp = std::max(worst_mp, std::abs(law.moment(n) - expected[n]));

    bool table_ok = true;
    int checked = 0;
    for (const auto& rec : harness::builtin_exponent_table()) {
        if (!rec.complete()) continue;
        table_ok = table_ok && harness::check_exponent_constraint(rec).ok;
        ++checked;
    }
    auto fabricated = harness::builtin_exponent_table().front();
    *fabricated.nu_D += 0.25;
    const bool rejects = !harness::check_exponent_constraint(fabricated).ok;
    const bool ok = worst_series <= 1e-6 && worst_mp <= 1e-6 && table_ok && checked > 0 && rejects;
    return {ok, fmt("convolution moments vs series max error %.2e; MP moments max error %.2e; %d table rows %s; "
                    "fabricated row %s",
                    worst_series, worst_mp, checked, table_ok ? "pass" : "FAIL", rejects ? "rejected" : "ACCEPTED")};
}

Outcome single_channel_anomaly(Context& ctx) {
    SweepConfig cfg;
    cfg.N_list = {20, 30, 40};
    cfg.r = 1;
    cfg.grid = {450.0};
    cfg.realizations = 20;
    cfg.seed = 1010;
    cfg.observables = {"spectrum", "steady"};
    const SweepResult r1 = sweep(ctx, "anomaly_r1", cfg);
    // r = 2 reference from criterion 3 (same N list and g_eff)
    SweepResult r2;
    try {
        r2 = harness::load_sweep((ctx.scratch / "gap_strong_r2").string());
    } catch (const IoError&) {
        SweepConfig c2 = cfg;
        c2.r = 2;
        c2.seed = 303;
        r2 = sweep(ctx, "gap_strong_r2", c2);
    }

    std::map<int, double> gap, purity1, purity2;
    for (int N : cfg.N_list) {
        gap[N] = mean_scaled_gap(r1, N, [](const harness::Record& rec) { return std::sqrt(1.0 * rec.N) * rec.g_eff * rec.g_eff; });
        purity1[N] = r1.summary(N, 0)->purity.mean;
        purity2[N] = r2.summary(N, 0)->purity.mean;
    }
    const bool decreasing = gap[20] > gap[30] && gap[30] > gap[40];
    const double nu_gap = log_slope(gap) + 0.5;  // exponent of Delta / g_eff^2 in N
    const double p1_min = std::min({purity1[20], purity1[30], purity1[40]});
    const double nu_p1 = log_slope(purity1), nu_p2 = log_slope(purity2);
    std::map<int, double> p2N;
    for (auto [N, v] : purity2) p2N[N] = v * N;
    const double nu_p2N = log_slope(p2N);
    // order N^0 means the fitted exponent stays within 0.5 of zero
    const bool ok = decreasing && p1_min >= 0.1 && std::abs(nu_p1) <= 0.5 && std::abs(nu_p2N) <= 0.5 &&
                    r1.failed() == 0;
    return {ok, fmt("Delta/(sqrt(N) g_eff^2) = %.4g %.4g %.4g (decreasing: %s, exponent of Delta/g_eff^2 %.2f); "
                    "r=1 purity %.3f %.3f %.3f (exponent %.2f); r=2 purity*N %.3f %.3f %.3f (exponent %.2f, purity %.2f)",
                    gap[20], gap[30], gap[40], decreasing ? "yes" : "no", nu_gap, purity1[20], purity1[30], purity1[40],
                    nu_p1, p2N[20], p2N[30], p2N[40], nu_p2N, nu_p2)};
}

Outcome performance(Context& ctx) {
    SweepConfig one;
    one.N_list = {60};
    one.grid = {1.0};
    one.observables = {"eigenvalues", "ratios"};
    one.steady_route = "eigenvector";
    one.seed = 1111;
    const auto t0 = std::chrono::steady_clock::now();
    const harness::Record rec = harness::evaluate_realization(one, 60, 0, 0);
    const double single = seconds_since(t0);

    // rerun part of criterion 3 with a different worker count and compare bytes
    SweepConfig cfg;
    cfg.N_list = {20, 30};
    cfg.r = 2;
    cfg.grid = {450.0};
    cfg.realizations = 6;
    cfg.seed = 1112;
    cfg.observables = {"spectrum", "steady"};
    cfg.output_dir = (ctx.scratch / "rerun_a").string();
    harness::run_sweep(cfg, harness::SweepOptions{true, 1});
    cfg.output_dir = (ctx.scratch / "rerun_b").string();
    harness::run_sweep(cfg, harness::SweepOptions{true, 3});
    const bool identical = slurp(ctx.scratch / "rerun_a" / "records.jsonl") == slurp(ctx.scratch / "rerun_b" / "records.jsonl") &&
                           slurp(ctx.scratch / "rerun_a" / "summary.csv") == slurp(ctx.scratch / "rerun_b" / "summary.csv");

    if (ctx.c3_sweep_seconds < 0.0) strong_dissipation_gap(ctx);  // subset runs still time the sweep
    const bool sweep_ok = ctx.c3_sweep_seconds >= 0.0 && ctx.c3_sweep_seconds <= 3600.0;
    const bool ok = rec.ok && single <= 120.0 && sweep_ok && identical;
    return {ok, fmt("single N=60 realization %.1f s (<= 120); criterion 3 sweep %s; reruns %s; %u hardware threads",
                    single, ctx.c3_sweep_seconds >= 0.0 ? fmt("%.0f s (<= 3600)", ctx.c3_sweep_seconds).c_str() : "not run",
                    identical ? "bit-identical" : "DIFFER", std::thread::hardware_concurrency())};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome(Context&)>>> criteria{
        {"structural invariants", structural_invariants},
        {"zero mode and steady state", zero_mode_and_steady_state},
        {"strong-dissipation gap", strong_dissipation_gap},
        {"weak-dissipation gap", weak_dissipation_gap},
        {"imaginary-part density and real-part normality", imaginary_density},
        {"steady-state variance scaling", steady_variance_scaling},
        {"spacing-ratio statistics", ratio_statistics},
        {"classical generator", classical_generator},
        {"oracle self-consistency", oracle_consistency},
        {"single-channel anomaly", single_channel_anomaly},
        {"performance and reproducibility", performance},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    Context ctx;
    const char* dir = std::getenv("RANDLIND_ACCEPTANCE_DIR");
    ctx.scratch = dir ? fs::path(dir) : fs::temp_directory_path() / "randlind_acceptance";
    fs::remove_all(ctx.scratch);
    fs::create_directories(ctx.scratch);

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!wanted.empty() && !wanted.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second(ctx);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s criterion %d (%s) [%.1f s]: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                    seconds_since(t0), o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}

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

// randlind: command-line front end.
// Exit codes: 0 success, 1 usage, 2 numerical failure, 3 I/O.

#include <randlind/randlind.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace randlind;
using harness::format_double;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

struct InstanceArgs {
    int N = 4;
    int beta = 2;
    int r = 1;
    std::optional<double> g;
    std::optional<double> g_eff;
    std::uint64_t seed = 0;
    std::uint64_t realization = 0;

    void add_to(CLI::App* app) {
        app->add_option("-N,--N", N, "Hilbert-space dimension")->check(CLI::PositiveNumber);
        app->add_option("--beta", beta, "Dyson index (1 real, 2 complex)")->check(CLI::IsMember({1, 2}));
        app->add_option("--r", r, "number of jump operators")->check(CLI::PositiveNumber);
        auto* og = app->add_option("--g", g, "dissipation strength g");
        app->add_option("--geff", g_eff, "effective dissipation strength g_eff")->excludes(og);
        app->add_option("--seed", seed, "master seed");
        app->add_option("--realization", realization, "realization index");
    }

    ModelParams params() const {
        if (!g && !g_eff) throw std::invalid_argument("one of --g or --geff is required");
        if (g_eff) return ModelParams::from_geff(N, beta, r, *g_eff, seed, realization);
        ModelParams p{N, beta, r, *g, seed, realization};
        p.validate();
        return p;
    }
};

Superoperator build_instance(const ModelParams& p) {
    const RealizationRng rng(p);
    return build_liouvillian(sample_hamiltonian(p, rng), sample_jump_operators(p, rng), p);
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

json params_json(const ModelParams& p) {
    return {{"N", p.N}, {"beta", p.beta}, {"r", p.r}, {"g", p.g}, {"g_eff", p.g_eff()},
            {"seed", p.seed}, {"realization", p.realization_index}};
}

// ---------------------------------------------------------------------------

int cmd_build(const InstanceArgs& a, const std::string& out) {
    const ModelParams p = a.params();
    const Superoperator L = build_instance(p);
    std::ofstream os(out, std::ios::binary);
    if (!os) throw IoError("cannot write " + out);
    write_superoperator(os, L);
    if (!os) throw IoError("write failed: " + out);
    json j{{"params", params_json(p)}, {"dimension", L.matrix.rows()}, {"frobenius_norm", L.frobenius_norm()},
           {"output", out}};
    std::cout << j.dump(2) << '\n';
    return kOk;
}

int cmd_spectrum(const InstanceArgs& a, const std::string& in, const std::string& out) {
    std::optional<ModelParams> p;
    Superoperator L;
    if (!in.empty()) {
        std::ifstream is(in, std::ios::binary);
        if (!is) throw IoError("cannot open " + in);
        L = read_superoperator(is);
        p = L.params;
    } else {
        p = a.params();
        L = build_instance(*p);
    }
    DiagonalizeOptions opts;
    opts.keep_zero_mode_vector = false;
    const Spectrum s = diagonalize(L, opts);
    const SpectralSummary sum = summarize(s, p);
    if (!out.empty()) {
        std::string csv = "re,im\n";
        for (cplx v : s.eigenvalues) csv += format_double(v.real()) + ',' + format_double(v.imag()) + '\n';
        write_text(out, csv);
    }
    json j{{"R", sum.R},
           {"X", sum.X},
           {"Y", sum.Y},
           {"gap", sum.gap},
           {"zero_mode", {s.zero_mode().real(), s.zero_mode().imag()}},
           {"zero_mode_unique", s.zero_mode_unique},
           {"frobenius_norm", s.norm},
           {"max_residual", s.max_residual},
           {"residual_samples", s.residual_samples}};
    if (p) j["params"] = params_json(*p);
    std::cout << j.dump(2) << '\n';
    return kOk;
}

int cmd_steady(const InstanceArgs& a, const std::string& route, const std::string& out) {
    const ModelParams p = a.params();
    const Superoperator L = build_instance(p);
    SteadyState ss;
    if (route == "lu") {
        ss = solve_steady_state(L);
    } else {
        const Spectrum s = diagonalize(L);
        ss = extract_steady_state(L, s);
    }
    const PurityVariance pv = purity_and_variance(ss);
    json j{{"params", params_json(p)},
           {"route", route},
           {"purity", pv.purity},
           {"variance", pv.variance},
           {"min_eigenvalue", ss.min_eigenvalue},
           {"residual", ss.residual}};
    try {
        const EffectiveHamiltonian eff = effective_hamiltonian(ss, 1e-12, 3);
        const RatioStatistics rs = spacing_ratios(eff);
        j["ratios"] = {{"count", rs.ratios.size()}, {"mean", rs.mean}, {"stddev", rs.stddev},
                       {"statistic", rs.statistic}, {"discarded_levels", eff.discarded_count}};
    } catch (const NumericalError& e) {
        j["ratios"] = {{"error", e.what()}};
    }
    if (!out.empty()) {
        std::string csv = "p\n";
        for (double x : ss.p) csv += format_double(x) + '\n';
        write_text(out, csv);
    }
    std::cout << j.dump(2) << '\n';
    return kOk;
}

int cmd_oracle(const std::string& law, double lo, double hi, std::size_t points, int N, int beta, int r, double g) {
    using namespace oracles;
    if (points < 1) throw std::invalid_argument("--points must be >= 1");
    const auto grid = linspace(lo, hi, points);
    std::function<double(double)> density, cdf;
    if (law == "semicircle") {
        const SemicircleLaw w = SemicircleLaw::for_hamiltonian(N, beta);
        density = [w](double x) { return w.density(x); };
        cdf = [w](double x) { return w.cdf(x); };
    } else if (law == "semicircle-convolution") {
        const SemicircleConvolution c(std::sqrt(2.0 * beta * N));
        density = [c](double x) { return c.density(x); };
        cdf = [c](double x) { return c.cdf(x); };
    } else if (law == "marchenko-pastur") {
        const MarchenkoPasturLaw m{double(r)};
        density = [m](double x) { return m.density(x); };
    } else if (law == "mp-convolution") {
        const MpConvolution m(r);
        density = [m](double x) { return m.density(x); };
    } else if (law == "chi2") {
        const Chi2EntryLaw c(r * beta, g);
        density = [c](double x) { return c.density(x); };
        cdf = [c](double x) { return c.cdf(x); };
    } else if (law == "ratio-poisson" || law == "ratio-goe" || law == "ratio-gue") {
        const RatioLaw rl(law == "ratio-poisson" ? RatioKind::poisson
                          : law == "ratio-goe"   ? RatioKind::goe_surmise
                                                 : RatioKind::gue_surmise);
        density = [rl](double x) { return rl.density(x); };
        cdf = [rl](double x) { return rl.cdf(x); };
    } else {
        throw std::invalid_argument("unknown law '" + law + "'");
    }
    std::cout << (cdf ? "x,density,cdf\n" : "x,density\n");
    for (double x : grid) {
        std::cout << format_double(x) << ',' << format_double(density(x));
        if (cdf) std::cout << ',' << format_double(cdf(x));
        std::cout << '\n';
    }
    return kOk;
}

std::optional<double> observable_of(const harness::PointSummary& s, const std::string& obs) {
    const harness::Moment* m = obs == "X"          ? &s.X
                               : obs == "Y"        ? &s.Y
                               : obs == "gap"      ? &s.gap
                               : obs == "variance" ? &s.variance
                               : obs == "purity"   ? &s.purity
                                                   : nullptr;
    if (!m) throw std::invalid_argument("unknown observable '" + obs + "'");
    if (m->count == 0 || !(m->mean > 0.0)) return std::nullopt;
    return m->mean;
}

int cmd_collapse(const std::string& dir, const std::string& obs, double nu0, double kappa0, bool evaluate_only) {
    const harness::SweepResult res = harness::load_sweep(dir);
    std::vector<harness::Curve> curves;
    for (int N : res.config.N_list) {
        harness::Curve c;
        c.N = N;
        for (const auto& s : res.table) {
            if (s.N != N) continue;
            if (auto q = observable_of(s, obs)) {
                c.g_eff.push_back(s.g_eff);
                c.Q.push_back(*q);
            }
        }
        if (c.g_eff.size() >= 2) curves.push_back(std::move(c));
    }
    json j{{"observable", obs}, {"curves", curves.size()}};
    if (evaluate_only) {
        j["nu"] = nu0;
        j["kappa"] = kappa0;
        j["quality"] = harness::collapse_quality(curves, res.config.beta, nu0, kappa0);
    } else {
        const harness::CollapseFit f = harness::optimize_exponents(curves, res.config.beta, nu0, kappa0);
        j["nu"] = f.nu;
        j["kappa"] = f.kappa;
        j["quality"] = f.quality;
        j["converged"] = f.converged;
        j["degenerate"] = f.degenerate;
        j["iterations"] = f.iterations;
    }
    std::cout << j.dump(2) << '\n';
    return kOk;
}

int cmd_report(const std::string& dir, const std::string& preset, const std::string& out) {
    const harness::SweepResult res = harness::load_sweep(dir);
    for (const auto& path : harness::report(res, preset, out.empty() ? dir : out)) std::cout << path << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"randlind: random Lindbladian spectra and steady states"};
    app.require_subcommand(1);

    InstanceArgs build_args, spectrum_args, steady_args;
    std::string build_out = "liouvillian.bin", spectrum_in, spectrum_out, steady_out, steady_route = "eigenvector";
    auto* build = app.add_subcommand("build", "sample one instance and dump its superoperator");
    build_args.add_to(build);
    build->add_option("-o,--out", build_out, "binary dump path");

    auto* spectrum = app.add_subcommand("spectrum", "diagonalize one instance");
    spectrum_args.add_to(spectrum);
    spectrum->add_option("--in", spectrum_in, "read a binary dump instead of sampling");
    spectrum->add_option("-o,--out", spectrum_out, "eigenvalue CSV path");

    auto* steady = app.add_subcommand("steady", "steady-state report for one instance");
    steady_args.add_to(steady);
    steady->add_option("--route", steady_route, "eigenvector or lu")->check(CLI::IsMember({"eigenvector", "lu"}));
    steady->add_option("-o,--out", steady_out, "CSV path for the eigenvalues of rho_0");

    std::string config_path, sweep_out;
    std::vector<int> n_list;
    int sw_beta = 2, sw_r = 2;
    double geff_min = 0.0, geff_max = 0.0;
    std::size_t geff_points = 0, realizations = 0, workers = 0;
    std::uint64_t sw_seed = 0;
    std::vector<std::string> observables;
    auto* sweep = app.add_subcommand("sweep", "run an ensemble sweep");
    sweep->add_option("--config", config_path, "JSON config file");
    sweep->add_option("--n-list", n_list, "matrix sizes")->delimiter(',');
    sweep->add_option("--beta", sw_beta)->check(CLI::IsMember({1, 2}));
    sweep->add_option("--r", sw_r)->check(CLI::PositiveNumber);
    sweep->add_option("--geff-min", geff_min);
    sweep->add_option("--geff-max", geff_max);
    sweep->add_option("--geff-points", geff_points);
    sweep->add_option("--realizations", realizations);
    sweep->add_option("--seed", sw_seed);
    sweep->add_option("--observables", observables, "spectrum,eigenvalues,steady,ratios")->delimiter(',');
    sweep->add_option("--out", sweep_out, "output directory");
    sweep->add_option("--workers", workers, "worker threads (RANDLIND_WORKERS overrides)");

    std::string law = "semicircle";
    double o_min = -1.0, o_max = 1.0, o_g = 1.0;
    std::size_t o_points = 101;
    int o_N = 10, o_beta = 2, o_r = 1;
    auto* oracle = app.add_subcommand("oracle", "tabulate a reference law");
    oracle->add_option("law", law,
                       "semicircle | semicircle-convolution | marchenko-pastur | mp-convolution | chi2 | "
                       "ratio-poisson | ratio-goe | ratio-gue")
        ->required();
    oracle->add_option("--min", o_min);
    oracle->add_option("--max", o_max);
    oracle->add_option("--points", o_points);
    oracle->add_option("-N,--N", o_N)->check(CLI::PositiveNumber);
    oracle->add_option("--beta", o_beta)->check(CLI::IsMember({1, 2}));
    oracle->add_option("--r", o_r)->check(CLI::PositiveNumber);
    oracle->add_option("--g", o_g);

    std::string c_dir, c_obs = "X";
    double c_nu = 0.0, c_kappa = 0.0;
    bool c_eval = false;
    auto* collapse = app.add_subcommand("collapse", "fit scaling-collapse exponents on a sweep directory");
    collapse->add_option("dir", c_dir)->required();
    collapse->add_option("--observable", c_obs, "X | Y | gap | variance | purity");
    collapse->add_option("--nu", c_nu, "start (or evaluated) nu");
    collapse->add_option("--kappa", c_kappa, "start (or evaluated) kappa");
    collapse->add_flag("--evaluate", c_eval, "only evaluate the collapse quality at (nu, kappa)");

    std::string r_dir, r_preset, r_out;
    auto* report = app.add_subcommand("report", "write plot data for a figure preset");
    report->add_option("dir", r_dir)->required();
    report->add_option("--preset", r_preset)->required()->check(CLI::IsMember(harness::report_presets()));
    report->add_option("-o,--out", r_out, "output directory (default: the sweep directory)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*build) return cmd_build(build_args, build_out);
        if (*spectrum) return cmd_spectrum(spectrum_args, spectrum_in, spectrum_out);
        if (*steady) return cmd_steady(steady_args, steady_route, steady_out);
        if (*oracle) return cmd_oracle(law, o_min, o_max, o_points, o_N, o_beta, o_r, o_g);
        if (*collapse) return cmd_collapse(c_dir, c_obs, c_nu, c_kappa, c_eval);
        if (*report) return cmd_report(r_dir, r_preset, r_out);
        if (*sweep) {
            harness::SweepConfig cfg;
            if (!config_path.empty()) cfg = harness::load_config(config_path);
            if (!n_list.empty()) cfg.N_list = n_list;
            if (sweep->count("--beta")) cfg.beta = sw_beta;
            if (sweep->count("--r")) cfg.r = sw_r;
            if (sweep->count("--geff-min") || sweep->count("--geff-max") || sweep->count("--geff-points")) {
                if (!sweep->count("--geff-min") || !sweep->count("--geff-max") || !sweep->count("--geff-points"))
                    throw std::invalid_argument("--geff-min, --geff-max and --geff-points go together");
                cfg.grid_is_g = false;
                cfg.grid = harness::log_grid(geff_min, geff_max, geff_points);
            }
            if (sweep->count("--realizations")) cfg.realizations = realizations;
            if (sweep->count("--seed")) cfg.seed = sw_seed;
            if (!observables.empty()) cfg.observables = observables;
            if (!sweep_out.empty()) cfg.output_dir = sweep_out;
            if (sweep->count("--workers")) cfg.workers = workers;
            cfg.validate();
            const harness::SweepResult res = harness::run_sweep(cfg, {false, std::nullopt});
            std::cout << json{{"output_dir", cfg.output_dir},
                              {"records", res.records.size()},
                              {"failed", res.failed()}}
                             .dump(2)
                      << '\n';
            return kOk;
        }
    } catch (const NumericalError& e) {
        std::cerr << "randlind: numerical failure (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kNumerical;
    } catch (const IoError& e) {
        std::cerr << "randlind: I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "randlind: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "randlind: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}

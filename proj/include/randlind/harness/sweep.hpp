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

// harness/sweep.hpp: seeded ensemble sweeps with crash-safe persistence.
//
// Output directory layout:
//   records.partial.jsonl  one JSON line per finished realization, completion order
//   records.jsonl          all records sorted by (N, point, realization)
//   summary.csv            per-(N, grid point) means and standard errors
//   sweep.json             config + provenance
// The partial file is removed once the sorted files are written.

#pragma once

#include "../core.hpp"
#include "../ensembles.hpp"
#include "../liouvillian.hpp"
#include "../spectra.hpp"
#include "../stats.hpp"
#include "../steadystate.hpp"
#include "config.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace randlind::harness {

/// One realization's measurements. Unset optionals were not requested.
struct Record {
    int N = 0;
    std::size_t point = 0;
    std::uint64_t realization = 0;
    double g_eff = 0.0;
    double g = 0.0;
    std::uint64_t seed = 0;
    bool ok = true;
    std::string error_kind;  // ErrorKind name, "invalid_argument" or "other"
    std::string error;

    std::optional<double> gap, X, Y, R, max_residual;
    std::optional<double> purity, variance, min_p, steady_residual;
    std::optional<double> ratio_mean, ratio_std, ratio_statistic;
    std::vector<double> ratios, epsilons;
    std::vector<double> eig_re, eig_im;

    std::tuple<int, std::size_t, std::uint64_t> key() const { return {N, point, realization}; }
};

namespace detail {

// JSON has no inf or nan; those travel as the strings "inf", "-inf" and "nan".
inline nlohmann::json number_to_json(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

inline double number_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw IoError("record: unexpected string value '" + s + "'");
    }
    return j.get<double>();
}

inline nlohmann::json numbers_to_json(const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) a.push_back(number_to_json(x));
    return a;
}

inline std::vector<double> numbers_from_json(const nlohmann::json& j) {
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(number_from_json(x));
    return v;
}

}  // namespace detail

inline nlohmann::json to_json(const Record& r) {
    nlohmann::json j{{"N", r.N},       {"point", r.point}, {"realization", r.realization}, {"g_eff", r.g_eff},
                     {"g", r.g},       {"seed", r.seed},   {"ok", r.ok}};
    if (!r.ok) {
        j["error_kind"] = r.error_kind;
        j["error"] = r.error;
    }
    auto put = [&](const char* name, const std::optional<double>& v) {
        if (v) j[name] = detail::number_to_json(*v);
    };
    put("gap", r.gap);
    put("X", r.X);
    put("Y", r.Y);
    put("R", r.R);
    put("max_residual", r.max_residual);
    put("purity", r.purity);
    put("variance", r.variance);
    put("min_p", r.min_p);
    put("steady_residual", r.steady_residual);
    put("ratio_mean", r.ratio_mean);
    put("ratio_std", r.ratio_std);
    put("ratio_statistic", r.ratio_statistic);
    if (!r.ratios.empty()) j["ratios"] = detail::numbers_to_json(r.ratios);
    if (!r.epsilons.empty()) j["epsilons"] = detail::numbers_to_json(r.epsilons);
    if (!r.eig_re.empty()) {
        j["eig_re"] = detail::numbers_to_json(r.eig_re);
        j["eig_im"] = detail::numbers_to_json(r.eig_im);
    }
    return j;
}

inline Record record_from_json(const nlohmann::json& j) {
    Record r;
    r.N = j.at("N").get<int>();
    r.point = j.at("point").get<std::size_t>();
    r.realization = j.at("realization").get<std::uint64_t>();
    r.g_eff = j.at("g_eff").get<double>();
    r.g = j.at("g").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.ok = j.at("ok").get<bool>();
    if (!r.ok) {
        r.error_kind = j.value("error_kind", "");
        r.error = j.value("error", "");
    }
    auto get = [&](const char* name, std::optional<double>& v) {
        if (j.contains(name)) v = detail::number_from_json(j.at(name));
    };
    get("gap", r.gap);
    get("X", r.X);
    get("Y", r.Y);
    get("R", r.R);
    get("max_residual", r.max_residual);
    get("purity", r.purity);
    get("variance", r.variance);
    get("min_p", r.min_p);
    get("steady_residual", r.steady_residual);
    get("ratio_mean", r.ratio_mean);
    get("ratio_std", r.ratio_std);
    get("ratio_statistic", r.ratio_statistic);
    if (j.contains("ratios")) r.ratios = detail::numbers_from_json(j.at("ratios"));
    if (j.contains("epsilons")) r.epsilons = detail::numbers_from_json(j.at("epsilons"));
    if (j.contains("eig_re")) {
        r.eig_re = detail::numbers_from_json(j.at("eig_re"));
        r.eig_im = detail::numbers_from_json(j.at("eig_im"));
    }
    return r;
}

/// Runs sample -> build -> diagonalize -> summarize -> steady-state analysis
/// for one realization. Failures are captured in the record, never thrown.
inline Record evaluate_realization(const SweepConfig& cfg, int N, std::size_t point, std::uint64_t realization) {
    Record rec;
    rec.N = N;
    rec.point = point;
    rec.realization = realization;
    rec.seed = cfg.seed;
    // a failed realization keeps only its key, so it can be replayed standalone
    auto failed = [&](std::string kind, std::string what) {
        Record f;
        f.N = N;
        f.point = point;
        f.realization = realization;
        f.g_eff = rec.g_eff;
        f.g = rec.g;
        f.seed = cfg.seed;
        f.ok = false;
        f.error_kind = std::move(kind);
        f.error = std::move(what);
        return f;
    };
    try {
        const ModelParams p = cfg.params(N, point, realization);
        rec.g = p.g;
        rec.g_eff = p.g_eff();
        const RealizationRng rng(p);
        const auto H = sample_hamiltonian(p, rng);
        const auto W = sample_jump_operators(p, rng);
        const Superoperator L = build_liouvillian(H, W, p);

        std::optional<Spectrum> spectrum;
        if (cfg.wants("spectrum")) {
            DiagonalizeOptions opts;
            opts.keep_zero_mode_vector = cfg.wants("steady") && cfg.steady_route != "lu";
            spectrum = diagonalize(L, opts);
            const SpectralSummary s = summarize(*spectrum, p);
            rec.gap = s.gap;
            rec.X = s.X;
            rec.Y = s.Y;
            rec.R = s.R;
            rec.max_residual = spectrum->max_residual;
            if (cfg.wants("eigenvalues")) {
                for (cplx v : spectrum->eigenvalues) {
                    rec.eig_re.push_back(v.real());
                    rec.eig_im.push_back(v.imag());
                }
            }
        }
        if (cfg.wants("steady")) {
            const SteadyState ss = spectrum && spectrum->zero_mode_vector ? extract_steady_state(L, *spectrum)
                                                                            : solve_steady_state(L);
            const PurityVariance pv = purity_and_variance(ss);
            rec.purity = pv.purity;
            rec.variance = pv.variance;
            rec.min_p = ss.min_eigenvalue;
            rec.steady_residual = ss.residual;
            if (cfg.wants("ratios")) {
                const EffectiveHamiltonian eff = effective_hamiltonian(ss, 1e-12, 3);
                rec.epsilons = eff.epsilons;
                const RatioStatistics rs = spacing_ratios(eff);
                rec.ratios = rs.ratios;
                rec.ratio_mean = rs.mean;
                rec.ratio_std = rs.stddev;
                rec.ratio_statistic = rs.statistic;
            }
        }
    } catch (const NumericalError& e) {
        return failed(to_string(e.kind()), e.what());
    } catch (const std::invalid_argument& e) {
        return failed("invalid_argument", e.what());
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Summaries

struct Moment {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t count = 0;
};

inline Moment moment_of(const std::vector<double>& v) {
    Moment m;
    m.count = v.size();
    if (v.empty()) return m;
    m.mean = stats::mean(v);
    m.stderr_ = stats::standard_error(v);
    return m;
}

struct PointSummary {
    int N = 0;
    std::size_t point = 0;
    double g_eff = 0.0;
    double g = 0.0;
    std::size_t realizations = 0;  // successful
    std::size_t failed = 0;
    Moment gap, X, Y, R, variance, purity, ratio_statistic;
};

inline const std::vector<std::string>& summary_columns() {
    static const std::vector<std::string> cols{"gap", "X", "Y", "R", "variance", "purity", "ratio_statistic"};
    return cols;
}

struct SweepResult {
    SweepConfig config;
    std::vector<Record> records;  // sorted by key
    std::vector<PointSummary> table;
    std::string version = kVersionTag;

    std::size_t failed() const {
        return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const Record& r) { return !r.ok; }));
    }
    /// Successful records at (N, point).
    std::vector<const Record*> at(int N, std::size_t point) const {
        std::vector<const Record*> out;
        for (const auto& r : records)
            if (r.ok && r.N == N && r.point == point) out.push_back(&r);
        return out;
    }
    const PointSummary* summary(int N, std::size_t point) const {
        for (const auto& s : table)
            if (s.N == N && s.point == point) return &s;
        return nullptr;
    }
};

inline std::vector<PointSummary> summarize_records(const SweepConfig& cfg, const std::vector<Record>& records) {
    std::vector<PointSummary> table;
    for (int N : cfg.N_list) {
        for (std::size_t pt = 0; pt < cfg.grid.size(); ++pt) {
            PointSummary s;
            s.N = N;
            s.point = pt;
            const ModelParams p = cfg.params(N, pt, 0);
            s.g = p.g;
            s.g_eff = p.g_eff();
            std::map<std::string, std::vector<double>> cols;
            for (const auto& r : records) {
                if (r.N != N || r.point != pt) continue;
                if (!r.ok) {
                    ++s.failed;
                    continue;
                }
                ++s.realizations;
                auto add = [&](const char* name, const std::optional<double>& v) {
                    if (v) cols[name].push_back(*v);
                };
                add("gap", r.gap);
                add("X", r.X);
                add("Y", r.Y);
                add("R", r.R);
                add("variance", r.variance);
                add("purity", r.purity);
                add("ratio_statistic", r.ratio_statistic);
            }
            if (s.realizations == 0 && s.failed == 0) continue;
            s.gap = moment_of(cols["gap"]);
            s.X = moment_of(cols["X"]);
            s.Y = moment_of(cols["Y"]);
            s.R = moment_of(cols["R"]);
            s.variance = moment_of(cols["variance"]);
            s.purity = moment_of(cols["purity"]);
            s.ratio_statistic = moment_of(cols["ratio_statistic"]);
            table.push_back(s);
        }
    }
    return table;
}

inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string summary_csv(const std::vector<PointSummary>& table) {
    std::ostringstream os;
    os << "N,point,g_eff,g,realizations,failed";
    for (const auto& c : summary_columns()) os << ',' << c << ',' << c << "_stderr";
    os << '\n';
    for (const auto& s : table) {
        os << s.N << ',' << s.point << ',' << format_double(s.g_eff) << ',' << format_double(s.g) << ','
           << s.realizations << ',' << s.failed;
        for (const Moment* m : {&s.gap, &s.X, &s.Y, &s.R, &s.variance, &s.purity, &s.ratio_statistic}) {
            if (m->count == 0) os << ",,";
            else os << ',' << format_double(m->mean) << ',' << format_double(m->stderr_);
        }
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Persistence

namespace detail {

inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp);
        out << content;
        out.flush();
        if (!out) throw IoError("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp + ": " + ec.message());
}

// Reads JSONL records, skipping a torn trailing line from an interrupted run.
inline std::vector<Record> read_records(const std::filesystem::path& path) {
    std::vector<Record> out;
    std::ifstream in(path);
    if (!in) return out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            out.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception&) {
            std::cerr << "randlind: skipping unreadable record line in " << path << '\n';
        }
    }
    return out;
}

}  // namespace detail

inline std::size_t worker_count(const SweepConfig& cfg) {
    if (const char* env = std::getenv("RANDLIND_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
        throw std::invalid_argument("RANDLIND_WORKERS must be a positive integer");
    }
    if (cfg.workers > 0) return cfg.workers;
    return std::max(1u, std::thread::hardware_concurrency());
}

struct SweepOptions {
    bool quiet = true;
    std::optional<std::size_t> workers;  // overrides env and config
};

/// Writes records.jsonl, summary.csv and sweep.json for a completed record set.
inline SweepResult finalize_sweep(const SweepConfig& cfg, std::vector<Record> records) {
    namespace fs = std::filesystem;
    std::sort(records.begin(), records.end(), [](const Record& a, const Record& b) { return a.key() < b.key(); });
    records.erase(std::unique(records.begin(), records.end(),
                              [](const Record& a, const Record& b) { return a.key() == b.key(); }),
                  records.end());
    SweepResult result;
    result.config = cfg;
    result.records = std::move(records);
    result.table = summarize_records(cfg, result.records);

    const fs::path dir(cfg.output_dir);
    std::string lines;
    for (const auto& r : result.records) lines += to_json(r).dump() + '\n';
    detail::write_file_atomic(dir / "records.jsonl", lines);
    detail::write_file_atomic(dir / "summary.csv", summary_csv(result.table));
    nlohmann::json meta{{"config", to_json(cfg)},
                        {"version", kVersionTag},
                        {"records", result.records.size()},
                        {"failed", result.failed()}};
    detail::write_file_atomic(dir / "sweep.json", meta.dump(2) + '\n');
    std::error_code ec;
    fs::remove(dir / "records.partial.jsonl", ec);
    return result;
}

/// Runs every (N, grid point, realization) task not already on disk.
inline SweepResult run_sweep(const SweepConfig& cfg, const SweepOptions& opts = {}) {
    namespace fs = std::filesystem;
    cfg.validate();
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.output_dir + ": " + ec.message());

    // Resume: anything in the sorted or partial files counts as done, but only
    // if it was produced by the same configuration.
    std::vector<Record> done;
    if (fs::exists(dir / "sweep.json")) {
        std::ifstream in(dir / "sweep.json");
        nlohmann::json meta;
        try {
            in >> meta;
        } catch (const nlohmann::json::exception&) {
            throw IoError("unreadable sweep.json in " + cfg.output_dir);
        }
        nlohmann::json mine = to_json(cfg), theirs = meta.value("config", nlohmann::json::object());
        for (const char* k : {"workers", "output_dir"}) {  // a moved directory is still the same sweep
            mine.erase(k);
            theirs.erase(k);
        }
        if (mine != theirs) throw IoError("output directory " + cfg.output_dir + " holds a sweep with a different config");
        done = detail::read_records(dir / "records.jsonl");
    } else {
        // Claim the directory before any partial output exists.
        nlohmann::json meta{{"config", to_json(cfg)}, {"version", kVersionTag}, {"records", 0}, {"failed", 0}};
        detail::write_file_atomic(dir / "sweep.json", meta.dump(2) + '\n');
    }
    if (fs::exists(dir / "records.partial.jsonl")) {
        // rewrite without a torn tail so that appends start on a fresh line
        std::string lines;
        for (auto& r : detail::read_records(dir / "records.partial.jsonl")) {
            lines += to_json(r).dump() + '\n';
            done.push_back(std::move(r));
        }
        detail::write_file_atomic(dir / "records.partial.jsonl", lines);
    }
    std::set<std::tuple<int, std::size_t, std::uint64_t>> completed;
    for (const auto& r : done) completed.insert(r.key());

    struct Task {
        int N;
        std::size_t point;
        std::uint64_t realization;
    };
    std::vector<Task> tasks;
    for (int N : cfg.N_list)
        for (std::size_t pt = 0; pt < cfg.grid.size(); ++pt)
            for (std::uint64_t k = 0; k < cfg.realizations; ++k)
                if (!completed.count({N, pt, k})) tasks.push_back({N, pt, k});
    // largest matrices first keeps the pool busy at the end
    std::stable_sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) { return a.N > b.N; });

    if (!tasks.empty()) {
        // Pin dense kernels to one thread: results then do not depend on the worker count.
        if (openblas_set_num_threads) openblas_set_num_threads(1);
        std::ofstream partial(dir / "records.partial.jsonl", std::ios::app);
        if (!partial) throw IoError("cannot open records.partial.jsonl in " + cfg.output_dir);
        std::mutex mu;
        std::atomic<std::size_t> next{0};
        std::size_t finished = 0;
        bool io_failed = false;
        const std::size_t workers = std::min(opts.workers.value_or(worker_count(cfg)), tasks.size());
        auto work = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                Record rec = evaluate_realization(cfg, tasks[i].N, tasks[i].point, tasks[i].realization);
                const std::string line = to_json(rec).dump() + '\n';
                std::lock_guard<std::mutex> lock(mu);
                partial << line;
                partial.flush();
                if (!partial) io_failed = true;
                ++finished;
                if (!rec.ok)
                    std::cerr << "randlind: realization failed (N=" << rec.N << ", point=" << rec.point
                              << ", realization=" << rec.realization << ", seed=" << rec.seed << "): "
                              << rec.error_kind << ": " << rec.error << '\n';
                if (!opts.quiet)
                    std::cerr << "randlind: " << finished << "/" << tasks.size() << " done\n";
                done.push_back(std::move(rec));
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
        for (auto& t : pool) t.join();
        if (io_failed) throw IoError("write to records.partial.jsonl failed");
    }
    return finalize_sweep(cfg, std::move(done));
}

/// Loads a finished sweep directory.
inline SweepResult load_sweep(const std::string& directory) {
    namespace fs = std::filesystem;
    const fs::path dir(directory);
    std::ifstream in(dir / "sweep.json");
    if (!in) throw IoError("no sweep.json in " + directory);
    nlohmann::json meta;
    try {
        in >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("unreadable sweep.json in " + directory + ": " + e.what());
    }
    SweepResult result;
    result.config = config_from_json(meta.at("config"));
    result.version = meta.value("version", "");
    if (!fs::exists(dir / "records.jsonl")) throw IoError("no records.jsonl in " + directory);
    result.records = detail::read_records(dir / "records.jsonl");
    result.table = summarize_records(result.config, result.records);
    return result;
}

}  // namespace randlind::harness

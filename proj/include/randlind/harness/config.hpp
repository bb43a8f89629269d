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

// harness/config.hpp: sweep configuration and its JSON form.
//
// Key set of the config file (all keys mirror SweepConfig fields):
//   N_list, beta, r, grid_kind ("g_eff" | "g"), grid, realizations, seed,
//   observables, output_dir, workers, steady_route ("auto" | "lu" | "eigenvector")
// Instead of "grid" a log-spaced grid may be given as
//   "grid_log": {"min": ..., "max": ..., "points": ...}

#pragma once

#include "../core.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace randlind::harness {

inline constexpr const char* kVersionTag = "randlind-0.1.0";

// Observables a sweep can record per realization.
//   spectrum     full diagonalization; gap, X, Y, R
//   eigenvalues  also keep every eigenvalue (implies spectrum)
//   steady       rho_0 purity and eigenvalue variance
//   ratios       effective-Hamiltonian levels and spacing ratios (implies steady)
inline const std::set<std::string>& known_observables() {
    static const std::set<std::string> names{"spectrum", "eigenvalues", "steady", "ratios"};
    return names;
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    if (points == 0) throw std::invalid_argument("log_grid: points must be >= 1");
    if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log_grid: need 0 < min <= max");
    if (points == 1) {
        if (hi != lo) throw std::invalid_argument("log_grid: one point requires min == max");
        return {lo};
    }
    std::vector<double> g(points);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    g.front() = lo;  // endpoints exact
    g.back() = hi;
    return g;
}

struct SweepConfig {
    std::vector<int> N_list{10};
    int beta = 2;
    int r = 2;
    bool grid_is_g = false;  // false: grid holds g_eff values
    std::vector<double> grid{1.0};
    std::size_t realizations = 1;
    std::uint64_t seed = 0;
    std::vector<std::string> observables{"spectrum", "steady"};
    std::string output_dir = "sweep";
    std::size_t workers = 0;  // 0: RANDLIND_WORKERS or hardware concurrency
    std::string steady_route = "auto";

    bool wants(const std::string& o) const {
        if (std::find(observables.begin(), observables.end(), o) != observables.end()) return true;
        if (o == "spectrum") return wants("eigenvalues");
        if (o == "steady") return wants("ratios");
        return false;
    }

    void validate() const {
        if (N_list.empty()) throw std::invalid_argument("SweepConfig: N_list is empty");
        if (grid.empty()) throw std::invalid_argument("SweepConfig: grid is empty");
        for (std::size_t i = 0; i < N_list.size(); ++i) {
            if (N_list[i] < 2) throw std::invalid_argument("SweepConfig: N must be >= 2");
            if (i > 0 && N_list[i] <= N_list[i - 1])
                throw std::invalid_argument("SweepConfig: N_list must be strictly increasing");
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!(grid[i] > 0.0) || !std::isfinite(grid[i]))
                throw std::invalid_argument("SweepConfig: grid values must be finite and > 0");
            if (i > 0 && grid[i] <= grid[i - 1])
                throw std::invalid_argument("SweepConfig: grid must be strictly increasing");
        }
        if (beta != 1 && beta != 2) throw std::invalid_argument("SweepConfig: beta must be 1 or 2");
        if (r < 1) throw std::invalid_argument("SweepConfig: r must be >= 1");
        if (realizations < 1) throw std::invalid_argument("SweepConfig: realizations must be >= 1");
        if (observables.empty()) throw std::invalid_argument("SweepConfig: no observables");
        for (const auto& o : observables)
            if (!known_observables().count(o)) throw std::invalid_argument("SweepConfig: unknown observable '" + o + "'");
        if (steady_route != "auto" && steady_route != "lu" && steady_route != "eigenvector")
            throw std::invalid_argument("SweepConfig: steady_route must be auto, lu or eigenvector");
        if (steady_route == "eigenvector" && !wants("spectrum"))
            throw std::invalid_argument("SweepConfig: steady_route eigenvector needs the spectrum observable");
    }

    /// Model parameters of grid point `point` at size N.
    ModelParams params(int N, std::size_t point, std::uint64_t realization) const {
        ModelParams p;
        p.N = N;
        p.beta = beta;
        p.r = r;
        p.g = grid_is_g ? grid.at(point) : g_from_geff(N, beta, r, grid.at(point));
        p.seed = seed;
        p.realization_index = realization;
        p.validate();
        return p;
    }
};

inline nlohmann::json to_json(const SweepConfig& c) {
    return nlohmann::json{{"N_list", c.N_list},
                          {"beta", c.beta},
                          {"r", c.r},
                          {"grid_kind", c.grid_is_g ? "g" : "g_eff"},
                          {"grid", c.grid},
                          {"realizations", c.realizations},
                          {"seed", c.seed},
                          {"observables", c.observables},
                          {"output_dir", c.output_dir},
                          {"workers", c.workers},
                          {"steady_route", c.steady_route}};
}

inline SweepConfig config_from_json(const nlohmann::json& j) {
    static const std::set<std::string> keys{"N_list", "beta", "r", "grid_kind", "grid", "grid_log", "realizations",
                                            "seed", "observables", "output_dir", "workers", "steady_route"};
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    for (const auto& [k, v] : j.items())
        if (!keys.count(k)) throw std::invalid_argument("config: unknown key '" + k + "'");
    SweepConfig c;
    try {
        if (j.contains("N_list")) c.N_list = j.at("N_list").get<std::vector<int>>();
        if (j.contains("beta")) c.beta = j.at("beta").get<int>();
        if (j.contains("r")) c.r = j.at("r").get<int>();
        if (j.contains("grid_kind")) {
            const auto kind = j.at("grid_kind").get<std::string>();
            if (kind != "g" && kind != "g_eff") throw std::invalid_argument("config: grid_kind must be g or g_eff");
            c.grid_is_g = kind == "g";
        }
        if (j.contains("grid") && j.contains("grid_log"))
            throw std::invalid_argument("config: give either grid or grid_log");
        if (j.contains("grid")) c.grid = j.at("grid").get<std::vector<double>>();
        if (j.contains("grid_log")) {
            const auto& gl = j.at("grid_log");
            c.grid = log_grid(gl.at("min").get<double>(), gl.at("max").get<double>(),
                              gl.at("points").get<std::size_t>());
        }
        if (j.contains("realizations")) c.realizations = j.at("realizations").get<std::size_t>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("observables")) c.observables = j.at("observables").get<std::vector<std::string>>();
        if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("workers")) c.workers = j.at("workers").get<std::size_t>();
        if (j.contains("steady_route")) c.steady_route = j.at("steady_route").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

inline SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("config " + path + ": " + e.what());
    }
    return config_from_json(j);
}

}  // namespace randlind::harness

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

// harness/report.hpp: plot-data presets (CSV) for completed sweeps.
//
//   fig1    eigenvalue scatter of realization 0 and X, Y, R summaries
//   fig2    real/imaginary marginal densities with oracle overlays
//   fig3    gap vs g_eff with weak/strong oracle lines
//   fig4a   steady-state eigenvalue variance and purity
//   fig4bc  effective-Hamiltonian level densities with a normal overlay
//   fig4d   spacing-ratio histogram with Poisson and surmise overlays
//   fig4e   pooled ratio moment statistic
//   fig4    fig4a + fig4bc + fig4d + fig4e

#pragma once

#include "../oracles.hpp"
#include "../stats.hpp"
#include "sweep.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace randlind::harness {

inline const std::vector<std::string>& report_presets() {
    static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig4a", "fig4bc", "fig4d", "fig4e", "fig4"};
    return names;
}

namespace detail {

inline std::string csv_row(std::initializer_list<double> values) {
    std::string s;
    bool first = true;
    for (double v : values) {
        if (!first) s += ',';
        s += format_double(v);
        first = false;
    }
    return s + '\n';
}

template <typename Field>
std::vector<double> pooled(const SweepResult& res, int N, std::size_t pt, Field field) {
    std::vector<double> out;
    for (const Record* r : res.at(N, pt)) {
        const std::vector<double>& v = field(*r);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

inline void require(bool have, const std::string& preset, const char* observable) {
    if (!have)
        throw std::invalid_argument("report " + preset + ": sweep did not record the '" + observable + "' observable");
}

inline std::string fig1(const SweepResult& res) {
    require(res.config.wants("spectrum"), "fig1", "spectrum");
    std::string s = "g_eff,N,mean_X,stderr_X,mean_Y,stderr_Y,mean_R,stderr_R\n";
    for (const auto& p : res.table)
        if (p.X.count)
            s += csv_row({p.g_eff, double(p.N), p.X.mean, p.X.stderr_, p.Y.mean, p.Y.stderr_, p.R.mean, p.R.stderr_});
    return s;
}

inline std::string fig1_scatter(const SweepResult& res) {
    require(res.config.wants("eigenvalues"), "fig1", "eigenvalues");
    std::string s = "g_eff,N,re,im\n";
    for (const auto& p : res.table) {
        const auto recs = res.at(p.N, p.point);
        if (recs.empty()) continue;
        const Record& r = *recs.front();
        for (std::size_t k = 0; k < r.eig_re.size(); ++k) s += csv_row({p.g_eff, double(p.N), r.eig_re[k], r.eig_im[k]});
    }
    return s;
}

// Imaginary parts against the semicircle self-convolution (weak dissipation);
// real parts in units of beta N g^2 against the Marchenko-Pastur half-sum
// convolution (strong dissipation). Densities have unit mass.
inline std::string fig2(const SweepResult& res) {
    require(res.config.wants("eigenvalues"), "fig2", "eigenvalues");
    const int beta = res.config.beta;
    const oracles::MpConvolution mp(res.config.r);
    std::string s = "axis,g_eff,N,center,density,oracle\n";
    for (const auto& p : res.table) {
        const std::vector<double> im = pooled(res, p.N, p.point, [](const Record& r) -> const std::vector<double>& { return r.eig_im; });
        const std::vector<double> re = pooled(res, p.N, p.point, [](const Record& r) -> const std::vector<double>& { return r.eig_re; });
        if (im.empty()) continue;
        const oracles::SemicircleConvolution sc(std::sqrt(2.0 * beta * p.N));
        const double unit = beta * p.N * p.g * p.g;
        for (int axis = 0; axis < 2; ++axis) {
            const auto& v = axis == 0 ? im : re;
            const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
            const auto h = stats::make_histogram(v, *mn, *mx, stats::freedman_diaconis_bins(v), double(v.size()));
            for (std::size_t b = 0; b < h.bins(); ++b) {
                const double c = h.center(b);
                const double oracle = axis == 0 ? sc.density(c) : mp.density(c / unit) / unit;
                s += (axis == 0 ? "imag," : "real,") + csv_row({p.g_eff, double(p.N), c, h.density[b], oracle});
            }
        }
    }
    return s;
}

inline std::string fig3(const SweepResult& res) {
    require(res.config.wants("spectrum"), "fig3", "spectrum");
    std::string s = "g_eff,N,mean_gap,stderr,oracle_weak,oracle_strong\n";
    for (const auto& p : res.table) {
        if (!p.gap.count) continue;
        const ModelParams mp = res.config.params(p.N, p.point, 0);
        s += csv_row({p.g_eff, double(p.N), p.gap.mean, p.gap.stderr_, oracles::gap_weak(mp), oracles::gap_strong(mp)});
    }
    return s;
}

inline std::string fig4a(const SweepResult& res) {
    require(res.config.wants("steady"), "fig4a", "steady");
    std::string s = "g_eff,N,mean_variance,stderr_variance,N2_variance,mean_purity,stderr_purity\n";
    for (const auto& p : res.table)
        if (p.variance.count)
            s += csv_row({p.g_eff, double(p.N), p.variance.mean, p.variance.stderr_, double(p.N) * p.N * p.variance.mean,
                          p.purity.mean, p.purity.stderr_});
    return s;
}

// Levels of each realization standardized to zero mean and unit variance before pooling.
inline std::string fig4bc(const SweepResult& res) {
    require(res.config.wants("ratios"), "fig4bc", "ratios");
    std::string s = "g_eff,N,center,density,normal\n";
    for (const auto& p : res.table) {
        std::vector<double> z;
        for (const Record* r : res.at(p.N, p.point)) {
            const double m = stats::mean(r->epsilons), sd = std::sqrt(stats::variance(r->epsilons));
            if (!(sd > 0.0)) continue;
            for (double e : r->epsilons) z.push_back((e - m) / sd);
        }
        if (z.empty()) continue;
        const auto h = stats::make_histogram(z, -4.0, 4.0, 40, double(z.size()));
        for (std::size_t b = 0; b < h.bins(); ++b) {
            const double c = h.center(b);
            s += csv_row({p.g_eff, double(p.N), c, h.density[b], std::exp(-0.5 * c * c) / std::sqrt(2.0 * oracles::pi)});
        }
    }
    return s;
}

inline std::string fig4d(const SweepResult& res) {
    require(res.config.wants("ratios"), "fig4d", "ratios");
    const oracles::RatioLaw poisson(oracles::RatioKind::poisson);
    const oracles::RatioLaw surmise(res.config.beta == 2 ? oracles::RatioKind::gue_surmise : oracles::RatioKind::goe_surmise);
    std::string s = "g_eff,N,center,density,poisson,surmise\n";
    for (const auto& p : res.table) {
        const auto v = pooled(res, p.N, p.point, [](const Record& r) -> const std::vector<double>& { return r.ratios; });
        if (v.empty()) continue;
        const auto h = stats::make_histogram(v, 0.0, 10.0, 50, double(v.size()));
        for (std::size_t b = 0; b < h.bins(); ++b) {
            const double c = h.center(b);
            s += csv_row({p.g_eff, double(p.N), c, h.density[b], poisson.density(c), surmise.density(c)});
        }
    }
    return s;
}

inline std::string fig4e(const SweepResult& res) {
    require(res.config.wants("ratios"), "fig4e", "ratios");
    const double target = 1.0 / std::sqrt(oracles::gue_ratio_variance_target());
    std::string s = "g_eff,N,g_eff_sqrtN,statistic,ratios,gue_target\n";
    for (const auto& p : res.table) {
        const auto v = pooled(res, p.N, p.point, [](const Record& r) -> const std::vector<double>& { return r.ratios; });
        if (v.size() < 2) continue;
        const double sd = std::sqrt(stats::variance(v));
        const double stat = sd > 0.0 ? stats::mean(v) / sd : std::numeric_limits<double>::infinity();
        s += csv_row({p.g_eff, double(p.N), p.g_eff * std::sqrt(double(p.N)), stat, double(v.size()), target});
    }
    return s;
}

}  // namespace detail

/// Writes the preset's CSV files into `out_dir` and returns their paths.
/// Nothing is written when the sweep is empty or lacks a needed observable.
inline std::vector<std::string> report(const SweepResult& res, const std::string& preset, const std::string& out_dir) {
    namespace fs = std::filesystem;
    if (std::find(report_presets().begin(), report_presets().end(), preset) == report_presets().end())
        throw std::invalid_argument("report: unknown preset '" + preset + "'");
    const bool any_ok = std::any_of(res.records.begin(), res.records.end(), [](const Record& r) { return r.ok; });
    if (!any_ok) throw std::invalid_argument("report: sweep has no successful realizations");

    std::vector<std::pair<std::string, std::string>> files;
    auto add = [&](const std::string& name, std::string content) { files.emplace_back(name, std::move(content)); };
    if (preset == "fig1") {
        add("fig1_summary.csv", detail::fig1(res));
        if (res.config.wants("eigenvalues")) add("fig1_scatter.csv", detail::fig1_scatter(res));
    } else if (preset == "fig2") {
        add("fig2.csv", detail::fig2(res));
    } else if (preset == "fig3") {
        add("fig3.csv", detail::fig3(res));
    } else if (preset == "fig4") {
        add("fig4a.csv", detail::fig4a(res));
        add("fig4bc.csv", detail::fig4bc(res));
        add("fig4d.csv", detail::fig4d(res));
        add("fig4e.csv", detail::fig4e(res));
    } else if (preset == "fig4a") {
        add("fig4a.csv", detail::fig4a(res));
    } else if (preset == "fig4bc") {
        add("fig4bc.csv", detail::fig4bc(res));
    } else if (preset == "fig4d") {
        add("fig4d.csv", detail::fig4d(res));
    } else {
        add("fig4e.csv", detail::fig4e(res));
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
    std::vector<std::string> paths;
    for (const auto& [name, content] : files) {
        const fs::path path = fs::path(out_dir) / name;
        detail::write_file_atomic(path, content);
        paths.push_back(path.string());
    }
    return paths;
}

}  // namespace randlind::harness

// Copyright 2026 The qsl-quantumness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "qsl/harness.hpp"
#include "qsl/witness.hpp"

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

ScenarioConfig sweep_config(Model model, double theta, std::optional<double> gamma_ratio, double tau_max,
                            std::size_t grid_points, const SweepOptions& opts) {
    ScenarioConfig cfg;
    cfg.model = model;
    cfg.theta = theta;
    cfg.gamma_ratio = gamma_ratio;
    cfg.tau_max = opts.tau_max.value_or(tau_max);
    cfg.grid_points = opts.grid_points.value_or(grid_points);
    return cfg;
}

void append_rows(SweepResult& sweep, const ScenarioResult& r) {
    for (const auto& b : r.reports) {
        sweep.rows.push_back(SweepRow{r.config.theta, r.config.gamma_ratio, b});
    }
}

// One shared q-grid for all memory rates so curves can be compared row by row.
SweepResult memory_sweep(Model model, double theta, double tau_max, std::size_t grid_points,
                         const SweepOptions& opts) {
    std::vector<ScenarioConfig> configs;
    double shared_max = INFINITY;
    for (double ratio : kMemoryRatios) {
        configs.push_back(sweep_config(model, theta, ratio, tau_max, grid_points, opts));
        const ScenarioResult probe = run_scenario(configs.back(), std::vector<double>{});
        shared_max = std::min(shared_max, probe.trajectory.max_q());
    }
    const std::vector<double> targets = q_grid(shared_max, configs.front().q_grid);
    SweepResult sweep;
    for (const auto& cfg : configs) append_rows(sweep, run_scenario(cfg, targets));
    return sweep;
}

}  // namespace

SweepResult fig1(const SweepOptions& opts) {
    SweepResult sweep;
    for (double theta : {kPi / 8.0, kPi / 6.0, kPi / 5.0}) {
        const ScenarioConfig cfg = sweep_config(Model::dephasing, theta, std::nullopt, 3.0, 3001, opts);
        std::vector<double> targets = q_grid(quantumness_dephasing(theta, 2.0 * cfg.coupling * cfg.tau_max), cfg.q_grid);
        if (cfg.tau_max >= 1.0) {
            targets.push_back(quantumness_dephasing(theta, 2.0 * cfg.coupling * 1.0));
            std::sort(targets.begin(), targets.end());
        }
        append_rows(sweep, run_scenario(cfg, targets));
    }
    return sweep;
}

SweepResult fig2(const SweepOptions& opts) {
    return memory_sweep(Model::dephasing, kPi / 5.0, 20.0, 20001, opts);
}

SweepResult fig3(const SweepOptions& opts) {
    return memory_sweep(Model::dissipation, kPi / 4.0, 10.0, 10001, opts);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidInput("slope fit needs >= 2 matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

GhzResult ghz_scaling(double theta, double beta_small, int n_max) {
    if (!(beta_small > 0.0 && beta_small <= 1e-4)) throw InvalidInput("ghz beta must be in (0, 1e-4]");
    if (n_max < 2 || n_max > 12) throw InvalidInput("ghz n_max must be in 2..12");
    GhzResult g;
    g.theta = theta;
    g.beta = beta_small;
    const DensityMatrix rho0 = from_pure(qubit_state(theta));
    const double q1 = quantumness(rho0, ghz_dephased_state(theta, 1, beta_small));
    if (!(q1 > 0.0)) throw BoundError("GHZ state has no coherence to dephase (sin 4 theta = 0)");
    g.q_fixed = q1;

    std::vector<double> ns, qs, sqrt_qs, taus;
    for (int n = 1; n <= n_max; ++n) {
        GhzRow row;
        row.n = n;
        row.offdiag_factor = std::exp(-static_cast<double>(n * n) * beta_small);
        row.q = quantumness(rho0, ghz_dephased_state(theta, n, beta_small));
        row.sqrt_q_ratio = std::sqrt(row.q / q1);
        row.tau_q_closed = tau_q_dephasing(q1, theta, MemoryFunctions::markov(static_cast<double>(n * n)));

        ScenarioConfig cfg;
        cfg.model = Model::ghz;
        cfg.theta = theta;
        cfg.n = n;
        cfg.tau_max = 2.0 * row.tau_q_closed;
        cfg.grid_points = 1001;
        const ScenarioResult r = run_scenario(cfg, std::vector<double>{q1});
        row.tau_q_numeric = r.reports.front().tau_q_numeric.value_or(NAN);

        ns.push_back(n);
        qs.push_back(row.q);
        sqrt_qs.push_back(std::sqrt(row.q));
        taus.push_back(row.tau_q_closed);
        g.rows.push_back(row);
    }
    g.slope_q = loglog_slope(ns, qs);
    g.slope_sqrt_q = loglog_slope(ns, sqrt_qs);
    g.slope_tau_q = loglog_slope(ns, taus);
    g.note =
        "Stated scaling 'as n^2' for both Q and tau_Q: sqrt(Q) grows as n^2 (Q as n^4), while the time "
        "to reach a fixed Q falls as n^-2.";
    return g;
}

void write_ghz_csv(std::ostream& os, const GhzResult& g) {
    os << kGhzHeader << '\n';
    for (const auto& r : g.rows) {
        os << r.n << ',' << csv_cell(r.offdiag_factor) << ',' << csv_cell(r.q) << ',' << csv_cell(r.sqrt_q_ratio)
           << ',' << csv_cell(r.tau_q_closed) << ','
           << csv_cell(std::isfinite(r.tau_q_numeric) ? std::optional<double>(r.tau_q_numeric) : std::nullopt)
           << '\n';
    }
}

void write_ghz_fit_json(std::ostream& os, const GhzResult& g) {
    nlohmann::ordered_json j;
    j["theta"] = g.theta;
    j["beta"] = g.beta;
    j["q_fixed"] = g.q_fixed;
    j["n_max"] = g.rows.empty() ? 0 : g.rows.back().n;
    j["slope_q"] = g.slope_q;
    j["slope_sqrt_q"] = g.slope_sqrt_q;
    j["slope_tau_q"] = g.slope_tau_q;
    j["note"] = g.note;
    os << j.dump(2) << '\n';
}

}  // namespace qsl

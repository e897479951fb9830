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

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "qsl/harness.hpp"
#include "qsl/witness.hpp"

namespace qsl {

namespace {

// Dissipation propagation stops where |P| h exceeds this; beyond it the RK4
// step no longer resolves the decay rate.
constexpr double kStiffnessCap = 0.1;

double effective_coupling(const ScenarioConfig& cfg) {
    return cfg.model == Model::ghz ? cfg.coupling * cfg.n * cfg.n : cfg.coupling;
}

bool uses_memory(const ScenarioConfig& cfg) {
    return cfg.model == Model::dephasing || cfg.model == Model::dissipation || cfg.model == Model::ghz;
}

MemoryFunctions dephasing_memory(const ScenarioConfig& cfg) {
    const double g = effective_coupling(cfg);
    if (!cfg.gamma_ratio) return MemoryFunctions::markov(g);
    return MemoryFunctions(OUParams{g, *cfg.gamma_ratio * cfg.coupling});
}

std::optional<double> attempt(auto&& fn) {
    try {
        return fn();
    } catch (const BoundError&) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<double> scenario_grid(const ScenarioConfig& cfg) {
    std::size_t points = cfg.grid_points;
    if (uses_memory(cfg) && cfg.gamma_ratio) {
        const double max_step = riccati_step(OUParams{effective_coupling(cfg), *cfg.gamma_ratio * cfg.coupling});
        const double step = cfg.tau_max / static_cast<double>(points - 1);
        if (step > max_step) points = static_cast<std::size_t>(std::ceil(cfg.tau_max / max_step)) + 1;
    }
    return uniform_grid(cfg.tau_max, points);
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, std::optional<std::vector<double>> q_targets,
                            double dephasing_rate_scale) {
    cfg.validate();
    ScenarioResult out;
    out.config = cfg;
    std::vector<double> grid = scenario_grid(cfg);

    std::optional<Generator> gen;
    std::optional<DensityMatrix> rho0;
    std::shared_ptr<const DissipationMemory> diss_mem;
    const UnitaryControl control = make_control(cfg);

    switch (cfg.model) {
    case Model::unitary2l:
        gen = Unitary2L{control};
        rho0 = unitary_start_state(control);
        break;
    case Model::stirap:
        gen = Stirap{control};
        rho0 = stirap_start_state(control);
        break;
    case Model::dephasing:
    case Model::ghz:
        gen = Dephasing{dephasing_memory(cfg), dephasing_rate_scale};
        rho0 = from_pure(qubit_state(cfg.theta));
        if (cfg.model == Model::ghz) {
            out.notes.push_back("GHZ state evolved in the span of |1..1>, |0..0> with coupling n^2 Gamma");
        }
        break;
    case Model::dissipation: {
        DissipationMemory mem = cfg.gamma_ratio
                                    ? riccati_p(grid, OUParams{cfg.coupling, *cfg.gamma_ratio * cfg.coupling})
                                    : DissipationMemory::markov(cfg.coupling, grid);
        out.divergence_time = mem.divergence_time();
        std::size_t keep = 1;
        while (keep < mem.grid().size()) {
            const double h = grid[keep] - grid[keep - 1];
            if (std::abs(mem.p(grid[keep])) * h > kStiffnessCap) break;
            ++keep;
        }
        if (out.divergence_time) {
            std::ostringstream os;
            os << "Riccati memory diverged at t=" << *out.divergence_time;
            out.notes.push_back(os.str());
        }
        if (keep < grid.size()) {
            std::ostringstream os;
            os << "propagation horizon truncated to t=" << grid[keep - 1] << " (|P| step > " << kStiffnessCap << ")";
            out.notes.push_back(os.str());
            grid.resize(keep);
        }
        if (!mem.b_monotone()) out.notes.push_back("b(t) not monotone on the grid");
        if (!mem.p_within_fixed_point_bounds()) out.notes.push_back("P(t) left [0, Gamma]");
        diss_mem = std::make_shared<const DissipationMemory>(std::move(mem));
        gen = Dissipation{diss_mem};
        rho0 = from_pure(qubit_state(cfg.theta));
        break;
    }
    }

    out.model = describe(*gen);
    if (cfg.model == Model::ghz) out.model = "ghz";
    out.generator = gen;
    out.trajectory = propagate(*gen, *rho0, grid);
    const Trajectory& traj = out.trajectory;

    out.q_targets = q_targets ? std::move(*q_targets) : q_grid(traj.max_q(), cfg.q_grid);

    std::vector<double> diss_speed;
    if (diss_mem) {
        diss_speed.reserve(traj.size());
        for (double t : traj.grid) diss_speed.push_back(speed_dissipation(cfg.theta, t, *diss_mem));
    }

    std::optional<MemoryFunctions> deph_mem;
    if (cfg.model == Model::dephasing || cfg.model == Model::ghz) deph_mem = dephasing_memory(cfg);

    for (double q : out.q_targets) {
        BoundReport r = evaluate_bounds(traj, q, out.model);
        if (r.tau_exact && *r.tau_exact > 0.0) {
            const double tau = *r.tau_exact;
            switch (cfg.model) {
            case Model::dephasing:
            case Model::ghz:
                r.tau_q_closed = attempt([&] { return tau_q_dephasing(q, cfg.theta, *deph_mem); });
                break;
            case Model::unitary2l:
                r.tau_q_closed = attempt([&] { return tau_q_unitary(control, tau).tau_q; });
                break;
            case Model::dissipation:
                r.tau_q_closed = attempt([&] {
                    const double qc = quantumness_dissipation(cfg.theta, diss_mem->b(tau), diss_mem->c(tau));
                    const double mean = integrate_samples(traj.grid, diss_speed, tau) / tau;
                    if (mean <= 0.0) throw BoundError("no quantumness generation channel");
                    return std::sqrt(qc / 2.0) / mean;
                });
                break;
            case Model::stirap:
                break;
            }
        } else if (r.tau_exact) {
            r.tau_q_closed = 0.0;
        }
        out.reports.push_back(std::move(r));
    }

    if (cfg.model == Model::unitary2l) {
        try {
            out.unitary = tau_q_unitary(control, traj.end_time());
        } catch (const BoundError& e) {
            out.notes.push_back(std::string("closed-form unitary bound unavailable: ") + e.what());
        }
    }
    return out;
}

std::string csv_cell(std::optional<double> v) {
    if (!v) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", *v);
    return buf;
}

void write_report_json(std::ostream& os, const ScenarioResult& r) {
    using nlohmann::ordered_json;
    auto opt = [](std::optional<double> v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    const ScenarioConfig& c = r.config;
    ordered_json j;
    j["model"] = r.model;
    j["parameters"] = {{"theta", c.theta},
                       {"Gamma", c.coupling},
                       {"gamma", opt(c.gamma_ratio)},
                       {"theta0", c.theta0},
                       {"theta_rate", c.theta_rate},
                       {"alpha", c.alpha},
                       {"alpha_rate", c.alpha_rate},
                       {"tau_max", c.tau_max},
                       {"grid_points", r.trajectory.size()},
                       {"n", c.n}};
    j["max_q"] = r.trajectory.max_q();
    j["end_time"] = r.trajectory.end_time();
    j["divergence_time"] = opt(r.divergence_time);
    j["diagnostics"] = {{"max_trace_defect", r.trajectory.max_trace_defect},
                        {"max_hermiticity_defect", r.trajectory.max_hermiticity_defect},
                        {"min_eigenvalue", r.trajectory.min_eigenvalue}};
    if (r.unitary) {
        ordered_json u = {{"tau_q", r.unitary->tau_q},
                          {"numerator", r.unitary->numerator},
                          {"mean_sqrt_x", r.unitary->mean_sqrt_x},
                          {"tau_q_exact_speed", r.unitary->tau_q_exact_speed},
                          {"max_x_discrepancy", r.unitary->max_x_discrepancy},
                          {"quarter_pi_claim", opt(r.unitary->quarter_pi_claim)}};
        j["unitary"] = u;
    }
    ordered_json reports = ordered_json::array();
    for (const auto& b : r.reports) {
        reports.push_back({{"q_target", b.q_target},
                           {"tau_exact", opt(b.tau_exact)},
                           {"tau_q_numeric", opt(b.tau_q_numeric)},
                           {"tau_q_closed", opt(b.tau_q_closed)},
                           {"tau_b", opt(b.tau_b)},
                           {"tau_b_avg", opt(b.tau_b_avg)},
                           {"tau_weak", opt(b.tau_weak)},
                           {"slack", opt(b.slack)}});
    }
    j["reports"] = reports;
    j["notes"] = r.notes;
    os << j.dump(2) << '\n';
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
    os << kSweepHeader << '\n';
    for (const auto& row : sweep.rows) {
        const BoundReport& b = row.report;
        os << csv_cell(row.theta) << ','
           << (row.gamma_ratio ? csv_cell(row.gamma_ratio) : std::string("inf")) << ','
           << csv_cell(b.q_target) << ',' << csv_cell(b.tau_exact) << ',' << csv_cell(b.tau_q_numeric) << ','
           << csv_cell(b.tau_q_closed) << ',' << csv_cell(b.tau_b) << ',' << csv_cell(b.tau_b_avg) << '\n';
    }
}

}  // namespace qsl

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
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qsl/harness.hpp"
#include "qsl/witness.hpp"

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kQslSlack = 1e-4;
constexpr double kRateSlack = 1e-9;
constexpr double kConservationTol = 1e-9;
constexpr double kPositivityTol = 1e-7;
constexpr double kOracleTol = 1e-6;
constexpr double kWitnessRangeSlack = 1e-9;
constexpr double kWitnessFormTol = 1e-10;
constexpr std::size_t kWitnessPairsPerCase = 50;

enum Prop { qsl_validity, rate_inequality, conservation, oracle_equivalence, witness, kPropCount };

constexpr const char* kPropNames[kPropCount] = {"qsl_validity", "rate_inequality", "conservation",
                                                 "oracle_equivalence", "witness"};

struct Tally {
    double worst = INFINITY;
    std::size_t checks = 0;
    std::string detail;  // first failure

    void add(double margin, const std::string& where) {
        ++checks;
        if (margin < worst) worst = margin;
        if (margin < 0.0 && detail.empty()) detail = where;
    }
    void fail(const std::string& where) { add(-INFINITY, where); }
};

struct CaseOutcome {
    Tally props[kPropCount];
};

std::string case_label(std::size_t index, const ScenarioConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "case " << index << " (" << to_string(cfg.model) << ", theta=" << cfg.theta;
    if (cfg.gamma_ratio) os << ", gamma/Gamma=" << *cfg.gamma_ratio;
    os << ")";
    return os.str();
}

void check_witness(std::mt19937_64& rng, Tally& t, const std::string& label) {
    std::uniform_int_distribution<std::size_t> dims(2, 4);
    std::bernoulli_distribution pure(0.5);
    for (std::size_t k = 0; k < kWitnessPairsPerCase; ++k) {
        const std::size_t d = dims(rng);
        const bool pa = pure(rng);
        const bool pb = pure(rng);
        const DensityMatrix a = pa ? random_pure_state(d, rng) : random_mixed_state(d, rng);
        const DensityMatrix b = pb ? random_pure_state(d, rng) : random_mixed_state(d, rng);
        const double q = quantumness(a, b);
        const std::string where = label + ", witness pair " + std::to_string(k);
        t.add(std::min(q, 1.0 + kWitnessRangeSlack - q), where + ": Q out of range");
        t.add(q == quantumness(b, a) ? 0.0 : -1.0, where + ": Q not symmetric");
        t.add(kWitnessFormTol - std::abs(q - quantumness_trace_form(a, b)), where + ": forms disagree");
        if (pa && pb) {
            const double c = std::real(trace_of_product(a.matrix(), b.matrix()));
            t.add(kWitnessFormTol - std::abs(q - pure_state_quantumness(std::clamp(c, 0.0, 1.0))),
                  where + ": pure-state form disagrees");
        }
    }
}

void check_trajectory(const ScenarioResult& r, CaseOutcome& out, const std::string& label) {
    const Trajectory& traj = r.trajectory;

    for (const auto& b : r.reports) {
        if (!b.tau_exact || !b.tau_q_numeric) continue;
        out.props[qsl_validity].add(*b.tau_exact - *b.tau_q_numeric + kQslSlack,
                                    label + ": first crossing below tau_Q at q=" + std::to_string(b.q_target));
    }

    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double bound = 2.0 * std::sqrt(2.0 * std::max(traj.q_samples[i], 0.0)) * traj.speed_samples[i];
        out.props[rate_inequality].add(bound + kRateSlack - std::abs(traj.rate_samples[i]),
                                       label + ": rate exceeds bound at t=" + std::to_string(traj.grid[i]));
    }

    Tally& cons = out.props[conservation];
    cons.add(kConservationTol - traj.max_trace_defect, label + ": trace drift");
    cons.add(kConservationTol - traj.max_hermiticity_defect, label + ": Hermiticity drift");
    cons.add(traj.min_eigenvalue + kPositivityTol, label + ": negative eigenvalue");

    const ScenarioConfig& cfg = r.config;
    if (cfg.model == Model::dephasing && r.generator) {
        const auto& d = std::get<Dephasing>(*r.generator);
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const DensityMatrix closed = dephasing_closed_state(cfg.theta, traj.grid[i], d.memory);
            out.props[oracle_equivalence].add(
                kOracleTol - max_abs_diff(closed.matrix(), traj.states[i].matrix()),
                label + ": dephasing state departs from closed form at t=" + std::to_string(traj.grid[i]));
        }
    } else if (cfg.model == Model::dissipation && r.generator) {
        const auto& d = std::get<Dissipation>(*r.generator);
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const DensityMatrix closed = dissipation_closed_state(cfg.theta, traj.grid[i], *d.memory);
            out.props[oracle_equivalence].add(
                kOracleTol - max_abs_diff(closed.matrix(), traj.states[i].matrix()),
                label + ": dissipation state departs from closed form at t=" + std::to_string(traj.grid[i]));
        }
    } else if (cfg.model == Model::unitary2l) {
        const UnitaryControl control = make_control(cfg);
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const DensityMatrix closed = unitary_closed_state(control, traj.grid[i]);
            out.props[oracle_equivalence].add(
                kOracleTol - max_abs_diff(closed.matrix(), traj.states[i].matrix()),
                label + ": unitary state departs from U rho U^dagger at t=" + std::to_string(traj.grid[i]));
        }
    }
}

CaseOutcome run_case(std::uint64_t seed, std::size_t index, const ValidateOptions& opts) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    const ScenarioConfig cfg = random_scenario(rng);
    const std::string label = case_label(index, cfg);

    CaseOutcome out;
    check_witness(rng, out.props[witness], label);
    try {
        const ScenarioResult r = run_scenario(cfg, std::nullopt, opts.tamper_dephasing ? -1.0 : 1.0);
        check_trajectory(r, out, label);
    } catch (const IntegrationError& e) {
        std::ostringstream os;
        os << label << ": integration aborted at t=" << e.time() << " (min eigenvalue " << e.min_eigenvalue()
           << ")";
        out.props[conservation].fail(os.str());
    }
    return out;
}

}  // namespace

ScenarioConfig random_scenario(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Model models[] = {Model::dephasing, Model::dissipation, Model::unitary2l};

    ScenarioConfig cfg;
    cfg.model = models[pick(rng)];
    // Stay clear of sin 2theta = 0 and, for dephasing, of sin 4theta = 0 where
    // no coherence is left to lose.
    do {
        cfg.theta = 0.05 + (kPi / 2.0 - 0.1) * unit(rng);
    } while (cfg.model == Model::dephasing && std::abs(cfg.theta - kPi / 4.0) < 0.02);
    cfg.gamma_ratio = std::exp(std::log(0.1) + (std::log(50.0) - std::log(0.1)) * unit(rng));
    cfg.tau_max = 3.0;
    cfg.grid_points = 601;
    if (cfg.model == Model::unitary2l) {
        cfg.gamma_ratio.reset();
        cfg.theta0 = cfg.theta;
        cfg.theta_rate = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.2 + 1.3 * unit(rng));
        cfg.alpha = 2.0 * kPi * unit(rng);
        cfg.alpha_rate = -1.0 + 2.0 * unit(rng);
    }
    return cfg;
}

bool ValidationReport::passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed; });
}

ValidationReport validate(std::uint64_t seed, std::size_t cases, const ValidateOptions& opts) {
    if (cases < 1) throw InvalidInput("validate needs at least one case");
    std::vector<CaseOutcome> outcomes(cases);
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, cases));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cases; i = next++) outcomes[i] = run_case(seed, i, opts);
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    ValidationReport report;
    for (int p = 0; p < kPropCount; ++p) {
        PropertyResult res;
        res.name = kPropNames[p];
        double worst = INFINITY;
        for (const auto& o : outcomes) {
            const Tally& t = o.props[p];
            res.checks += t.checks;
            worst = std::min(worst, t.worst);
            if (res.detail.empty() && !t.detail.empty()) res.detail = t.detail;
        }
        res.worst_margin = res.checks ? worst : 0.0;
        res.passed = res.checks > 0 ? worst >= 0.0 : true;
        report.properties.push_back(res);
    }
    return report;
}

void write_validation_report(std::ostream& os, const ValidationReport& r) {
    nlohmann::ordered_json j;
    j["passed"] = r.passed();
    nlohmann::ordered_json props = nlohmann::ordered_json::array();
    for (const auto& p : r.properties) {
        nlohmann::ordered_json e;
        e["name"] = p.name;
        e["passed"] = p.passed;
        e["checks"] = p.checks;
        if (std::isfinite(p.worst_margin)) {
            e["worst_margin"] = p.worst_margin;
        } else {
            e["worst_margin"] = csv_cell(p.worst_margin);
        }
        if (!p.detail.empty()) e["first_failure"] = p.detail;
        props.push_back(e);
    }
    j["properties"] = props;
    os << j.dump(2) << '\n';
}

}  // namespace qsl

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

#ifndef QSL_HARNESS_HPP
#define QSL_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/generators.hpp"

namespace qsl {

/// Invalid scenario configuration; the message starts with the field name.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class Model { unitary2l, stirap, dephasing, dissipation, ghz };

std::string to_string(Model m);
Model parse_model(const std::string& name);

struct ScheduleTable {
    std::vector<double> times;
    std::vector<double> values;
};

/// Scenario parameters. Times are in units of 1/Gamma; gamma_ratio is
/// gamma/Gamma and an empty value selects the Markov limit.
struct ScenarioConfig {
    Model model = Model::dephasing;
    double theta = 0.39269908169872414;  // pi/8
    double coupling = 1.0;
    std::optional<double> gamma_ratio;

    double theta0 = 0.0;
    double theta_rate = 0.5;
    double alpha = 0.0;
    double alpha_rate = 0.0;
    std::optional<ScheduleTable> theta_table;
    std::optional<ScheduleTable> alpha_table;

    double tau_max = 3.0;
    std::size_t grid_points = 3001;
    std::size_t q_grid = 20;
    int n = 1;
    std::uint64_t seed = 0;

    /// Throws ConfigError naming the first offending field.
    void validate() const;
};

/// Parses a JSON object; unknown keys are rejected.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::filesystem::path& path);

UnitaryControl make_control(const ScenarioConfig& cfg);

/// Uniform propagation grid on [0, tau_max], refined when needed so the step
/// respects the memory step bound min(1/(50 gamma), 1/(50 Gamma)).
std::vector<double> scenario_grid(const ScenarioConfig& cfg);

struct ScenarioResult {
    ScenarioConfig config;
    std::string model;
    Trajectory trajectory;
    std::vector<double> q_targets;
    std::vector<BoundReport> reports;
    std::optional<UnitaryQsl> unitary;     // at tau_max, unitary2l only
    std::optional<double> divergence_time;  // dissipation Riccati blow-up
    std::vector<std::string> notes;
    std::optional<Generator> generator;
};

/// Builds the generator, propagates, and evaluates every bound on the q-grid
/// (or on `q_targets` when given). Deterministic for a fixed config.
/// `dephasing_rate_scale` is forwarded to Dephasing::rate_scale.
ScenarioResult run_scenario(const ScenarioConfig& cfg, std::optional<std::vector<double>> q_targets = {},
                            double dephasing_rate_scale = 1.0);

void write_report_json(std::ostream& os, const ScenarioResult& r);

struct SweepRow {
    double theta = 0.0;
    std::optional<double> gamma_ratio;  // empty for Markov
    BoundReport report;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

/// Common header of the figure CSV files.
inline constexpr const char* kSweepHeader =
    "theta,gamma_ratio,q,tau_exact,tau_q_numeric,tau_q_closed,tau_b,tau_b_avg";

void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

/// Overrides taken from the global CLI flags.
struct SweepOptions {
    std::optional<std::size_t> grid_points;
    std::optional<double> tau_max;
};

/// Markov dephasing, theta in {pi/8, pi/6, pi/5}: per-theta q-grid plus the
/// value of Q reached at t = 1.
SweepResult fig1(const SweepOptions& opts = {});
/// Non-Markov dephasing at theta = pi/5, gamma/Gamma in {0.1, 0.5, 1, 2}.
SweepResult fig2(const SweepOptions& opts = {});
/// Dissipation at theta = pi/4 over the same gamma/Gamma set.
SweepResult fig3(const SweepOptions& opts = {});

inline const std::vector<double> kMemoryRatios{0.1, 0.5, 1.0, 2.0};

struct GhzRow {
    int n = 1;
    double offdiag_factor = 0.0;  // exp(-n^2 beta)
    double q = 0.0;
    double sqrt_q_ratio = 0.0;  // sqrt(Q(n)) / sqrt(Q(1))
    double tau_q_closed = 0.0;  // Markov time to reach q_fixed
    double tau_q_numeric = 0.0;  // same from a propagated trajectory
};

struct GhzResult {
    double theta = 0.0;
    double beta = 0.0;
    double q_fixed = 0.0;
    std::vector<GhzRow> rows;
    double slope_q = 0.0;
    double slope_sqrt_q = 0.0;
    double slope_tau_q = 0.0;
    std::string note;
};

inline constexpr const char* kGhzHeader = "n,offdiag_factor,q,sqrt_q_ratio,tau_q_closed,tau_q_numeric";

/// Requires beta_small <= 1e-4 and 1 <= n_max <= 12.
GhzResult ghz_scaling(double theta, double beta_small, int n_max);
void write_ghz_csv(std::ostream& os, const GhzResult& g);
void write_ghz_fit_json(std::ostream& os, const GhzResult& g);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Random scenario for QSL fuzzing: model in {dephasing, dissipation,
/// unitary2l}, theta in (0, pi/2) away from sin 2theta = 0, gamma/Gamma
/// log-uniform in [0.1, 50].
ScenarioConfig random_scenario(std::mt19937_64& rng);

struct PropertyResult {
    std::string name;
    bool passed = true;
    double worst_margin = 0.0;  // >= 0 when passing
    std::size_t checks = 0;
    std::string detail;
};

struct ValidationReport {
    std::vector<PropertyResult> properties;
    bool passed() const;
};

struct ValidateOptions {
    /// Sign-flips every dephasing rate to check that the suite notices.
    bool tamper_dephasing = false;
    unsigned threads = 0;  // 0: hardware concurrency
};

ValidationReport validate(std::uint64_t seed, std::size_t cases, const ValidateOptions& opts = {});
void write_validation_report(std::ostream& os, const ValidationReport& r);

/// Full-precision scientific cell, or "NA".
std::string csv_cell(std::optional<double> v);

}  // namespace qsl

#endif  // QSL_HARNESS_HPP

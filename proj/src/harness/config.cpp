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
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qsl/harness.hpp"

namespace qsl {

namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& key) {
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(key, "expected a number");
    return v.get<double>();
}

long long get_integer(const json& j, const std::string& key) {
    const json& v = j.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError(key, "expected an integer");
    return v.get<long long>();
}

ScheduleTable get_table(const json& j, const std::string& key) {
    const json& v = j.at(key);
    if (!v.is_object()) throw ConfigError(key, "expected an object with times and values");
    for (const auto& [k, _] : v.items()) {
        if (k != "times" && k != "values") throw ConfigError(key + "." + k, "unknown key");
    }
    ScheduleTable t;
    try {
        t.times = v.at("times").get<std::vector<double>>();
        t.values = v.at("values").get<std::vector<double>>();
    } catch (const json::exception&) {
        throw ConfigError(key, "times and values must be arrays of numbers");
    }
    if (t.times.size() < 2 || t.times.size() != t.values.size()) {
        throw ConfigError(key, "times and values must have equal length >= 2");
    }
    return t;
}

}  // namespace

std::string to_string(Model m) {
    switch (m) {
    case Model::unitary2l:
        return "unitary2l";
    case Model::stirap:
        return "stirap";
    case Model::dephasing:
        return "dephasing";
    case Model::dissipation:
        return "dissipation";
    case Model::ghz:
        return "ghz";
    }
    return "unknown";
}

Model parse_model(const std::string& name) {
    for (Model m : {Model::unitary2l, Model::stirap, Model::dephasing, Model::dissipation, Model::ghz}) {
        if (to_string(m) == name) return m;
    }
    throw ConfigError("model", "unknown model '" + name + "'");
}

void ScenarioConfig::validate() const {
    if (!std::isfinite(theta)) throw ConfigError("theta", "must be finite");
    if (!(coupling > 0.0) || !std::isfinite(coupling)) throw ConfigError("Gamma", "must be > 0");
    if (gamma_ratio && (!(*gamma_ratio > 0.0) || !std::isfinite(*gamma_ratio))) {
        throw ConfigError("gamma", "must be > 0");
    }
    if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw ConfigError("tau_max", "must be > 0");
    if (grid_points < 100) throw ConfigError("grid_points", "must be >= 100");
    if (q_grid < 1) throw ConfigError("q_grid", "must be >= 1");
    if (n < 1 || n > 12) throw ConfigError("n", "must be in 1..12");
    for (double v : {theta0, theta_rate, alpha, alpha_rate}) {
        if (!std::isfinite(v)) throw ConfigError("schedule", "angles and rates must be finite");
    }
    if (theta_table && theta_table->times.front() > 0.0) {
        throw ConfigError("theta_table", "must cover t = 0");
    }
    if (alpha_table && alpha_table->times.front() > 0.0) {
        throw ConfigError("alpha_table", "must cover t = 0");
    }
}

ScenarioConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config", "top level must be an object");

    static const std::set<std::string> known{
        "model", "theta", "Gamma", "gamma", "markov", "theta0", "theta_rate", "alpha", "alpha_rate",
        "theta_table", "alpha_table", "tau_max", "grid_points", "q_grid", "n", "seed"};
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) throw ConfigError(key, "unknown key");
    }

    ScenarioConfig cfg;
    if (j.contains("model")) {
        if (!j["model"].is_string()) throw ConfigError("model", "expected a string");
        cfg.model = parse_model(j["model"].get<std::string>());
    }
    if (j.contains("theta")) cfg.theta = get_number(j, "theta");
    if (j.contains("Gamma")) cfg.coupling = get_number(j, "Gamma");
    if (j.contains("gamma")) cfg.gamma_ratio = get_number(j, "gamma");
    if (j.contains("markov")) {
        if (!j["markov"].is_boolean()) throw ConfigError("markov", "expected a boolean");
        if (j["markov"].get<bool>()) {
            if (cfg.gamma_ratio) throw ConfigError("markov", "conflicts with gamma");
        } else if (!cfg.gamma_ratio) {
            throw ConfigError("markov", "false requires gamma");
        }
    }
    if (j.contains("theta0")) cfg.theta0 = get_number(j, "theta0");
    if (j.contains("theta_rate")) cfg.theta_rate = get_number(j, "theta_rate");
    if (j.contains("alpha")) cfg.alpha = get_number(j, "alpha");
    if (j.contains("alpha_rate")) cfg.alpha_rate = get_number(j, "alpha_rate");
    if (j.contains("theta_table")) cfg.theta_table = get_table(j, "theta_table");
    if (j.contains("alpha_table")) cfg.alpha_table = get_table(j, "alpha_table");
    if (j.contains("tau_max")) cfg.tau_max = get_number(j, "tau_max");
    if (j.contains("grid_points")) {
        const long long g = get_integer(j, "grid_points");
        if (g < 0) throw ConfigError("grid_points", "must be >= 100");
        cfg.grid_points = static_cast<std::size_t>(g);
    }
    if (j.contains("q_grid")) {
        const long long q = get_integer(j, "q_grid");
        if (q < 1) throw ConfigError("q_grid", "must be >= 1");
        cfg.q_grid = static_cast<std::size_t>(q);
    }
    if (j.contains("n")) cfg.n = static_cast<int>(get_integer(j, "n"));
    if (j.contains("seed")) {
        const long long s = get_integer(j, "seed");
        if (s < 0) throw ConfigError("seed", "must be >= 0");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

UnitaryControl make_control(const ScenarioConfig& cfg) {
    UnitaryControl c;
    c.theta = cfg.theta_table ? Schedule::tabulated(cfg.theta_table->times, cfg.theta_table->values)
                              : Schedule::linear(cfg.theta0, cfg.theta_rate);
    c.alpha = cfg.alpha_table ? Schedule::tabulated(cfg.alpha_table->times, cfg.alpha_table->values)
                              : Schedule::linear(cfg.alpha, cfg.alpha_rate);
    return c;
}

}  // namespace qsl

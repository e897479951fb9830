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

// Command-line front end: figure sweeps, GHZ scaling, single scenarios and
// the randomized validation suite.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qsl/harness.hpp"

namespace {

// Opens --out (or stdout when empty) and hands the stream to `emit`.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& emit) {
    if (path.empty()) {
        emit(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    emit(f);
    f.flush();
    if (!f) throw std::runtime_error("write to " + path + " failed");
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
    std::filesystem::path p(path);
    return (p.parent_path() / (p.stem().string() + suffix)).string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantumness generation and quantum speed limit bounds"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out;
    std::optional<std::size_t> grid_points;
    std::optional<double> tau_max;
    app.add_option("--out", out, "Output file (default: stdout)");
    app.add_option("--grid-points", grid_points, "Override the propagation grid size")->check(CLI::Range(100, 10000000));
    app.add_option("--tau-max", tau_max, "Override the propagation horizon (units of 1/Gamma)")
        ->check(CLI::PositiveNumber);

    const std::string sweep_columns =
        std::string("CSV columns: ") + qsl::kSweepHeader +
        ". gamma_ratio is gamma/Gamma or 'inf' for Markov; unreached q targets are 'NA'.";
    auto* fig1 = app.add_subcommand("fig1", "Markov dephasing: tau_Q and tau_B vs Q, theta in {pi/8, pi/6, pi/5}");
    fig1->footer(sweep_columns);
    auto* fig2 = app.add_subcommand("fig2", "Non-Markov dephasing at theta = pi/5, gamma/Gamma in {0.1, 0.5, 1, 2}");
    fig2->footer(sweep_columns);
    auto* fig3 = app.add_subcommand("fig3", "Dissipation at theta = pi/4, gamma/Gamma in {0.1, 0.5, 1, 2}");
    fig3->footer(sweep_columns);

    auto* ghz = app.add_subcommand("ghz", "GHZ dephasing scaling with qubit number");
    double ghz_theta = std::numbers::pi / 8.0;
    double ghz_beta = 1e-6;
    int ghz_n_max = 5;
    ghz->add_option("--theta", ghz_theta, "GHZ angle");
    ghz->add_option("--beta", ghz_beta, "Small dephasing exponent (<= 1e-4)");
    ghz->add_option("--n-max", ghz_n_max, "Largest qubit number (2..12)");
    ghz->footer(std::string("CSV columns: ") + qsl::kGhzHeader +
                ". Slope fits go to <out stem>_fit.json (stdout when --out is absent).");

    auto* run = app.add_subcommand("run", "Run one scenario from a JSON config and print the bound report");
    std::string config_path;
    run->add_option("--config", config_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);

    auto* val = app.add_subcommand("validate", "Randomized property suite; exit status 1 on any failure");
    std::uint64_t seed = 20240229;
    std::size_t cases = 200;
    bool tamper = false;
    unsigned threads = 0;
    val->add_option("--seed", seed, "Base seed");
    val->add_option("--cases", cases, "Number of random scenarios")->check(CLI::PositiveNumber);
    val->add_option("--threads", threads, "Worker threads (0: all cores)");
    val->add_flag("--tamper-dephasing", tamper, "Sign-flip the dephasing rate (mutation check)");

    CLI11_PARSE(app, argc, argv);

    const qsl::SweepOptions sweep_opts{grid_points, tau_max};
    try {
        if (*fig1 || *fig2 || *fig3) {
            const qsl::SweepResult sweep = *fig1 ? qsl::fig1(sweep_opts)
                                           : *fig2 ? qsl::fig2(sweep_opts)
                                                   : qsl::fig3(sweep_opts);
            with_output(out, [&](std::ostream& os) { qsl::write_sweep_csv(os, sweep); });
        } else if (*ghz) {
            const qsl::GhzResult g = qsl::ghz_scaling(ghz_theta, ghz_beta, ghz_n_max);
            with_output(out, [&](std::ostream& os) { qsl::write_ghz_csv(os, g); });
            with_output(out.empty() ? out : sibling_path(out, "_fit.json"),
                        [&](std::ostream& os) { qsl::write_ghz_fit_json(os, g); });
        } else if (*run) {
            qsl::ScenarioConfig cfg = qsl::load_config(config_path);
            if (grid_points) cfg.grid_points = *grid_points;
            if (tau_max) cfg.tau_max = *tau_max;
            const qsl::ScenarioResult r = qsl::run_scenario(cfg);
            with_output(out, [&](std::ostream& os) { qsl::write_report_json(os, r); });
        } else if (*val) {
            const qsl::ValidationReport report = qsl::validate(seed, cases, {tamper, threads});
            with_output(out, [&](std::ostream& os) { qsl::write_validation_report(os, report); });
            for (const auto& p : report.properties) {
                std::cerr << (p.passed ? "PASS " : "FAIL ") << p.name << " checks=" << p.checks
                          << " worst_margin=" << p.worst_margin << '\n';
            }
            return report.passed() ? EXIT_SUCCESS : EXIT_FAILURE;
        }
    } catch (const qsl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const qsl::IntegrationError& e) {
        std::cerr << "integration aborted at t=" << e.time() << ": " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return EXIT_SUCCESS;
}

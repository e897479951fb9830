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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qsl/generators.hpp"
#include "qsl/witness.hpp"

using namespace qsl;
using oracle::pi;

namespace {

UnitaryControl control(double th0, double th_rate, double al0, double al_rate) {
    return UnitaryControl{Schedule::linear(th0, th_rate), Schedule::linear(al0, al_rate)};
}

std::size_t points_for(double t_end, double max_step) {
    return static_cast<std::size_t>(std::ceil(t_end / max_step)) + 1;
}

std::shared_ptr<const DissipationMemory> dissipation_memory(std::optional<double> gamma,
                                                            std::span<const double> grid) {
    return std::make_shared<const DissipationMemory>(gamma ? riccati_p(grid, OUParams{1.0, *gamma})
                                                           : DissipationMemory::markov(1.0, grid));
}

}  // namespace

TEST_CASE("schedules") {
    const Schedule lin = Schedule::linear(0.2, 0.5);
    CHECK(lin.value(2.0) == doctest::Approx(1.2));
    CHECK(lin.rate(7.0) == 0.5);
    CHECK(lin.has_constant_rate());

    const Schedule tab = Schedule::tabulated({0.0, 1.0, 3.0}, {0.0, 1.0, 2.0});
    CHECK(tab.value(0.5) == doctest::Approx(0.5));
    CHECK(tab.value(2.0) == doctest::Approx(1.5));
    CHECK(tab.rate(2.0) == doctest::Approx(0.5));
    CHECK_FALSE(tab.has_constant_rate());
    CHECK_THROWS_AS(tab.value(3.5), InvalidInput);
    CHECK_THROWS_AS(Schedule::tabulated({0.0, 0.0}, {1.0, 2.0}), InvalidInput);
    CHECK(Schedule::tabulated({0.0, 1.0, 2.0}, {0.0, 0.5, 1.0}).has_constant_rate());
}

TEST_CASE("two-level Hamiltonian special cases") {
    const double w = 0.7;
    CHECK(max_abs_diff(hamiltonian_2l(control(0.3, w, 0.0, 0.0), 0.4), pauli::x() * (-w)) < 1e-15);
    CHECK(max_abs_diff(hamiltonian_2l(control(0.3, w, pi / 2.0, 0.0), 0.4), pauli::y() * (-w)) < 1e-15);
}

TEST_CASE("two-level Hamiltonian equals i dU/dt U^dagger") {
    for (const auto& c : {control(pi / 4.0, 0.0, 0.3, 0.8), control(0.2, 0.5, 1.0, -0.6),
                          control(1.1, -1.3, 4.0, 0.9)}) {
        for (double t : {0.0, 0.7, 2.1}) {
            const double h = 1e-6;
            const ComplexMatrix du = (unitary_2l(c, t + h) - unitary_2l(c, t - h)) * (1.0 / (2.0 * h));
            const ComplexMatrix ref = du * unitary_2l(c, t).adjoint() * kI;
            const ComplexMatrix hh = hamiltonian_2l(c, t);
            CHECK(max_abs_diff(hh, ref) < 1e-8);
            CHECK(max_abs_diff(hh, hh.adjoint()) < 1e-15);
        }
    }
}

TEST_CASE("STIRAP Hamiltonian structure") {
    const ComplexMatrix h = hamiltonian_stirap(control(0.0, 0.4, 0.0, 0.0), 1.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if ((i == 0 && j == 2) || (i == 2 && j == 0)) continue;
            CHECK(h(i, j) == complex(0.0));
        }
    CHECK(h(0, 2) == complex(0.0, -0.4));
    CHECK(h(2, 0) == complex(0.0, 0.4));
    const ComplexMatrix g = hamiltonian_stirap(control(0.3, 0.4, 0.1, 0.9), 1.0);
    CHECK(max_abs_diff(g, g.adjoint()) == 0.0);
}

TEST_CASE("STIRAP transfer leaves the middle level empty") {
    const UnitaryControl c = control(0.0, 0.7, 0.0, 0.0);
    const double tau = 1.0;  // theta(tau) = 0.7 < pi/4
    const Trajectory traj = propagate(Stirap{c}, stirap_start_state(c), uniform_grid(tau, 2001));
    CHECK(max_abs_diff(traj.rho0.matrix(), from_pure(StateVector({0.0, 0.0, 1.0})).matrix()) == 0.0);
    double pop1 = 0.0;
    for (const auto& s : traj.states) pop1 = std::max(pop1, std::abs(s(1, 1)));
    CHECK(pop1 < 1e-10);
    const double th = 0.7 * tau;
    const DensityMatrix target = from_pure(StateVector({-std::sin(th), 0.0, std::cos(th)}));
    CHECK(max_abs_diff(traj.states.back().matrix(), target.matrix()) < 1e-8);
}

TEST_CASE("apply_generator examples") {
    const double d[] = {0.3, 0.7};
    const DensityMatrix diag(ComplexMatrix::diagonal(d));
    const Generator deph = Dephasing{MemoryFunctions::markov(1.0)};
    CHECK(hs_norm(apply_generator(deph, diag, 0.5)) == 0.0);

    const DensityMatrix plus = from_pure(StateVector::normalized({1.0, 1.0}));
    const ComplexMatrix lp = apply_generator(deph, plus, 0.0);
    CHECK(max_abs_diff(lp, ComplexMatrix(2, {0.0, -1.0, -1.0, 0.0})) < 1e-15);

    const auto mem = dissipation_memory(std::nullopt, uniform_grid(1.0, 101));
    const DensityMatrix excited = from_pure(StateVector({1.0, 0.0}));
    const ComplexMatrix le = apply_generator(Generator{Dissipation{mem}}, excited, 0.3);
    CHECK(max_abs_diff(le, ComplexMatrix(2, {-1.0, 0.0, 0.0, 1.0})) < 1e-15);

    CHECK_THROWS_AS(apply_generator(deph, from_pure(StateVector({1.0, 0.0, 0.0})), 0.0), InvalidInput);
    CHECK_THROWS_AS(apply_generator(Generator{Dissipation{mem}}, excited, 1.5), InvalidInput);
}

TEST_CASE("every generator is trace-annihilating") {
    std::mt19937_64 rng(17);
    const std::vector<double> grid = uniform_grid(2.0, 201);
    const std::vector<Generator> gens{
        Unitary2L{control(0.3, 0.5, 0.2, 0.4)}, Stirap{control(0.1, 0.6, 0.0, 0.3)},
        Dephasing{MemoryFunctions(OUParams{1.0, 0.5})}, Dissipation{dissipation_memory(0.5, grid)},
        Dissipation{dissipation_memory(std::nullopt, grid)}};
    for (const auto& g : gens) {
        for (int k = 0; k < 20; ++k) {
            const DensityMatrix r = random_mixed_state(generator_dim(g), rng);
            CHECK(std::abs(apply_generator(g, r, 0.1 * k).trace()) < 1e-10);
        }
    }
}

TEST_CASE("propagate: bookkeeping and dephasing populations") {
    const double th = pi / 5.0;
    const MemoryFunctions m(OUParams{1.0, 1.0});
    const DensityMatrix rho0 = from_pure(qubit_state(th));
    const Trajectory traj = propagate(Dephasing{m}, rho0, uniform_grid(5.0, 1001));
    CHECK(traj.size() == 1001);
    CHECK(max_abs_diff(traj.states.front().matrix(), rho0.matrix()) == 0.0);
    CHECK(traj.q_samples.front() == 0.0);
    double prev = 1.0;
    for (const auto& s : traj.states) {
        CHECK(validate_density(s, 1e-7).passed);
        CHECK(std::abs(s(0, 0) - rho0(0, 0)) < 1e-10);
        CHECK(std::abs(s(1, 1) - rho0(1, 1)) < 1e-10);
        CHECK(std::abs(s(0, 1)) <= prev);
        prev = std::abs(s(0, 1));
    }
    CHECK(traj.max_trace_defect < 1e-9);
    CHECK(traj.max_hermiticity_defect < 1e-9);
}

TEST_CASE("propagate: unitary purity") {
    const UnitaryControl c = control(0.2, 0.9, 0.5, -0.7);
    const Trajectory traj = propagate(Unitary2L{c}, unitary_start_state(c), uniform_grid(4.0, 2001));
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const ComplexMatrix& r = traj.states[i].matrix();
        CHECK(std::abs(trace_of_product(r, r) - 1.0) < 1e-8);
        CHECK(max_abs_diff(r, unitary_closed_state(c, traj.grid[i]).matrix()) < 1e-8);
    }
}

TEST_CASE("propagate: Markov decay of the excited state") {
    const std::vector<double> grid = uniform_grid(5.0, 1001);
    const auto mem = dissipation_memory(std::nullopt, grid);
    const Trajectory traj = propagate(Dissipation{mem}, from_pure(StateVector({1.0, 0.0})), grid);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(std::abs(traj.states[i](0, 0).real() - std::exp(-traj.grid[i])) < 1e-6);
    }
}

TEST_CASE("propagate aborts on a positivity violation") {
    Dephasing bad{MemoryFunctions::markov(1.0), -1.0};
    CHECK_THROWS_AS(propagate(bad, from_pure(qubit_state(0.4)), uniform_grid(1.0, 201)), IntegrationError);
    try {
        propagate(bad, from_pure(qubit_state(0.4)), uniform_grid(1.0, 201));
    } catch (const IntegrationError& e) {
        CHECK(e.time() > 0.0);
        CHECK(e.min_eigenvalue() < -1e-6);
    }
}

TEST_CASE("dephasing closed state") {
    const MemoryFunctions m(OUParams{1.0, 1.0});
    const double th = pi / 5.0;
    CHECK(max_abs_diff(dephasing_closed_state(th, 0.0, m).matrix(), from_pure(qubit_state(th)).matrix()) < 1e-16);
    const DensityMatrix late = dephasing_closed_state(th, 200.0, m);
    CHECK(std::abs(late(0, 1)) < 1e-60);
    CHECK(std::abs(late(0, 0) - std::pow(std::cos(th), 2)) < 1e-15);

    const Trajectory traj = propagate(Dephasing{m}, from_pure(qubit_state(th)), uniform_grid(1.0, 501));
    CHECK(max_abs_diff(traj.states.back().matrix(), dephasing_closed_state(th, 1.0, m).matrix()) < 1e-7);
}

TEST_CASE("dissipation closed state") {
    const std::vector<double> grid = uniform_grid(4.0, 401);
    const auto markov = dissipation_memory(std::nullopt, grid);
    const double th = pi / 4.0;
    CHECK(max_abs_diff(dissipation_closed_state(th, 0.0, *markov).matrix(), from_pure(qubit_state(th)).matrix()) <
          1e-16);
    for (double tau : {0.5, 1.0, 3.0}) {
        CHECK(std::abs(dissipation_closed_state(th, tau, *markov)(0, 1) - 0.5 * std::exp(-tau / 2.0)) < 1e-15);
    }
}

TEST_CASE("closed forms agree with propagation across the ensemble") {
    const std::vector<std::optional<double>> gammas{0.1, 0.5, 1.0, 2.0, 50.0, std::nullopt};
    for (double th : {pi / 8.0, pi / 5.0, pi / 4.0}) {
        for (const auto& gamma : gammas) {
            CAPTURE(th);
            CAPTURE(gamma.value_or(-1.0));
            const double step = gamma ? std::min(0.005, riccati_step(OUParams{1.0, *gamma})) : 0.005;
            const double t_end = 5.0;

            const MemoryFunctions dm = gamma ? MemoryFunctions(OUParams{1.0, *gamma}) : MemoryFunctions::markov(1.0);
            const std::vector<double> grid = uniform_grid(t_end, points_for(t_end, step));
            const Trajectory dt = propagate(Dephasing{dm}, from_pure(qubit_state(th)), grid);
            double worst = 0.0;
            for (std::size_t i = 0; i < dt.size(); ++i)
                worst = std::max(worst, max_abs_diff(dt.states[i].matrix(),
                                                     dephasing_closed_state(th, grid[i], dm).matrix()));
            CHECK(worst < 1e-6);

            // Below gamma = 2 Gamma the memory diverges (near t = 4.7 for
            // gamma = Gamma); compare up to 4 there.
            const double d_end = gamma && *gamma < 2.0 ? 4.0 : t_end;
            const std::vector<double> dgrid = uniform_grid(d_end, points_for(d_end, step));
            const auto mem = dissipation_memory(gamma, dgrid);
            REQUIRE_FALSE(mem->divergence_time().has_value());
            const Trajectory xt = propagate(Dissipation{mem}, from_pure(qubit_state(th)), dgrid);
            worst = 0.0;
            for (std::size_t i = 0; i < xt.size(); ++i)
                worst = std::max(worst, max_abs_diff(xt.states[i].matrix(),
                                                     dissipation_closed_state(th, dgrid[i], *mem).matrix()));
            CHECK(worst < 1e-6);
        }
    }
}

TEST_CASE("dissipation closed state matches propagation at tau = 2") {
    for (double gamma : {0.5, 2.0}) {
        const std::vector<double> grid = uniform_grid(2.0, 401);
        const auto mem = dissipation_memory(gamma, grid);
        const Trajectory xt = propagate(Dissipation{mem}, from_pure(qubit_state(pi / 5.0)), grid);
        CHECK(max_abs_diff(xt.states.back().matrix(), dissipation_closed_state(pi / 5.0, 2.0, *mem).matrix()) < 1e-6);
    }
}

TEST_CASE("step halving changes final states by less than 1e-8") {
    const double th = pi / 5.0;
    const MemoryFunctions dm(OUParams{1.0, 0.5});
    const auto final_dephasing = [&](std::size_t n) {
        return propagate(Dephasing{dm}, from_pure(qubit_state(th)), uniform_grid(3.0, n)).states.back().matrix();
    };
    CHECK(max_abs_diff(final_dephasing(1501), final_dephasing(3001)) < 1e-8);

    const auto final_dissipation = [&](std::size_t n) {
        const std::vector<double> grid = uniform_grid(3.0, n);
        const auto mem = dissipation_memory(0.5, grid);
        return propagate(Dissipation{mem}, from_pure(qubit_state(th)), grid).states.back().matrix();
    };
    CHECK(max_abs_diff(final_dissipation(1501), final_dissipation(3001)) < 1e-8);

    const UnitaryControl c = control(0.1, 0.8, 0.3, 0.5);
    const auto final_unitary = [&](std::size_t n) {
        return propagate(Unitary2L{c}, unitary_start_state(c), uniform_grid(3.0, n)).states.back().matrix();
    };
    CHECK(max_abs_diff(final_unitary(1501), final_unitary(3001)) < 1e-8);
}

TEST_CASE("GHZ dephased state") {
    const MemoryFunctions m = MemoryFunctions::markov(1.0);
    const double th = pi / 8.0;
    const double tau = 0.4;
    CHECK(max_abs_diff(ghz_dephased_state(th, 1, m.beta(tau)).matrix(), dephasing_closed_state(th, tau, m).matrix()) <
          1e-15);
    const DensityMatrix g3 = ghz_dephased_state(th, 3, 0.1);
    CHECK(std::abs(g3(0, 1) - std::sin(th) * std::cos(th) * std::exp(-0.9)) < 1e-15);
    CHECK(max_abs_diff(ghz_dephased_state(th, 4, 0.0).matrix(), from_pure(qubit_state(th)).matrix()) < 1e-16);
}

TEST_CASE("rk4_step reproduces a propagate step") {
    const UnitaryControl c = control(0.1, 0.8, 0.3, 0.5);
    const Generator g = Unitary2L{c};
    const std::vector<double> grid = uniform_grid(0.01, 2);
    const Trajectory traj = propagate(g, unitary_start_state(c), grid);
    const ComplexMatrix step = rk4_step(g, unitary_start_state(c).matrix(), 0.0, 0.01);
    CHECK(max_abs_diff(hermitian_part(step), traj.states.back().matrix()) < 1e-15);
}

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

#include <random>

#include "oracles.hpp"
#include "qsl/generators.hpp"
#include "qsl/memory.hpp"
#include "qsl/witness.hpp"

using namespace qsl;

namespace {

DensityMatrix diag2(double a, double b) {
    const double d[] = {a, b};
    return DensityMatrix(ComplexMatrix::diagonal(d));
}

const DensityMatrix kGround = from_pure(StateVector({0.0, 1.0}));
const DensityMatrix kPlus = from_pure(StateVector::normalized({1.0, 1.0}));

}  // namespace

TEST_CASE("quantumness examples") {
    std::mt19937_64 rng(3);
    const DensityMatrix m = random_mixed_state(3, rng);
    CHECK(quantumness(m, m) < 1e-15);
    CHECK(quantumness(diag2(0.7, 0.3), diag2(0.2, 0.8)) == 0.0);
    CHECK(quantumness(kGround, kPlus) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("quantumness against a hand-rolled 2x2 oracle") {
    for (double a : {0.1, 0.4, 0.9, 1.3})
        for (double b : {0.0, 0.25, 0.7, 1.5}) {
            const double ref = oracle::q2(oracle::qubit(a), oracle::qubit(b));
            CHECK(std::abs(quantumness(from_pure(qubit_state(a)), from_pure(qubit_state(b))) - ref) < 1e-14);
        }
}

TEST_CASE("quantumness rejects mismatched dimensions") {
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(quantumness(random_mixed_state(2, rng), random_mixed_state(3, rng)), InvalidInput);
}

TEST_CASE("pure_state_quantumness") {
    CHECK(pure_state_quantumness(0.0) == 0.0);
    CHECK(pure_state_quantumness(0.5) == 1.0);
    const double c = std::pow(std::cos(oracle::pi / 8.0), 2);
    CHECK(pure_state_quantumness(c) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(pure_state_quantumness(-0.1), InvalidInput);
    CHECK_THROWS_AS(pure_state_quantumness(1.1), InvalidInput);
}

TEST_CASE("witness properties on random pairs") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> dims(2, 4);
    int commuting = 0;
    for (int k = 0; k < 3000; ++k) {
        const std::size_t d = dims(rng);
        const bool pure = k % 2 == 0;
        const DensityMatrix a = pure ? random_pure_state(d, rng) : random_mixed_state(d, rng);
        const DensityMatrix b = pure ? random_pure_state(d, rng) : random_mixed_state(d, rng);
        const double q = quantumness(a, b);
        CHECK(q >= 0.0);
        CHECK(q <= 1.0 + 1e-9);
        CHECK(q == quantumness(b, a));
        CHECK(std::abs(q - quantumness_trace_form(a, b)) < 1e-10);
        if (pure) {
            const double c = std::real(trace_of_product(a.matrix(), b.matrix()));
            CHECK(std::abs(q - pure_state_quantumness(std::clamp(c, 0.0, 1.0))) < 1e-10);
        }
        // Commuting pairs: a with a function of itself.
        const DensityMatrix a2 = DensityMatrix::checked(hermitian_part(a.matrix() * a.matrix()) *
                                                            (1.0 / std::real(trace_of_product(a.matrix(), a.matrix()))),
                                                        1e-9);
        const double qc = quantumness(a, a2);
        CHECK((qc < 1e-12) == (hs_norm(commutator(a.matrix(), a2.matrix())) < 1e-7));
        commuting += qc < 1e-12;
    }
    CHECK(commuting == 3000);
}

TEST_CASE("random states are valid density matrices") {
    std::mt19937_64 rng(9);
    for (std::size_t d = 2; d <= 4; ++d) {
        CHECK(validate_density(random_pure_state(d, rng), 1e-10).passed);
        CHECK(validate_density(random_mixed_state(d, rng), 1e-10).passed);
    }
}

TEST_CASE("quantumness_rate trivial cases") {
    const DensityMatrix rho0 = from_pure(qubit_state(0.3));
    const ComplexMatrix lrho = apply_generator(Generator{Dephasing{MemoryFunctions::markov(1.0)}}, rho0, 0.0);
    CHECK(std::abs(quantumness_rate(rho0, rho0, lrho)) < 1e-15);
    CHECK(quantumness_rate(rho0, from_pure(qubit_state(0.9)), ComplexMatrix(2)) == 0.0);
}

TEST_CASE("quantumness_rate matches finite differences of the closed-form state") {
    const double th = oracle::pi / 8.0;
    const MemoryFunctions m = MemoryFunctions::markov(1.0);
    const Generator g = Dephasing{m};
    const DensityMatrix rho0 = from_pure(qubit_state(th));
    auto q_of = [&](double t) { return quantumness(rho0, dephasing_closed_state(th, t, m)); };
    for (double t : {0.1, 0.5, 1.3, 2.7}) {
        const DensityMatrix rt = dephasing_closed_state(th, t, m);
        const double rate = quantumness_rate(rho0, rt, apply_generator(g, rt, t));
        const double fd = oracle::derivative(q_of, t, 1e-5);
        CHECK(std::abs(rate - fd) < 1e-6);
    }

    // Same for a non-Markov memory.
    const MemoryFunctions nm(OUParams{1.0, 0.5});
    const Generator gn = Dephasing{nm};
    auto qn = [&](double t) { return quantumness(rho0, dephasing_closed_state(th, t, nm)); };
    for (double t : {0.2, 1.0, 4.0}) {
        const DensityMatrix rt = dephasing_closed_state(th, t, nm);
        CHECK(std::abs(quantumness_rate(rho0, rt, apply_generator(gn, rt, t)) - oracle::derivative(qn, t, 1e-5)) <
              1e-5);
    }
}

TEST_CASE("rate diagnostics flag a generator that does not preserve trace") {
    const DensityMatrix rho0 = from_pure(qubit_state(0.3));
    const DensityMatrix rt = from_pure(qubit_state(0.5));
    RateDiagnostics diag;
    quantumness_rate(rho0, rt, ComplexMatrix::identity(2), diag);
    CHECK_FALSE(diag.lrho_traceless);
    CHECK(diag.trace_defect == doctest::Approx(2.0));
}

TEST_CASE("generation_speed") {
    const DensityMatrix rho0 = from_pure(qubit_state(0.7));
    CHECK(generation_speed(rho0, rho0.matrix() * 0.3) < 1e-15);

    // Markov dephasing: L rho_t = -2 s c e^{-2t} sigma_x with s c = sin th cos th,
    // so the speed is 2 sqrt(2) s c e^{-2t} |cos 2th|.
    const double th = oracle::pi / 8.0;
    const MemoryFunctions m = MemoryFunctions::markov(1.0);
    const DensityMatrix r0 = from_pure(qubit_state(th));
    for (double t : {0.0, 0.4, 2.0}) {
        const DensityMatrix rt = dephasing_closed_state(th, t, m);
        const ComplexMatrix l = apply_generator(Generator{Dephasing{m}}, rt, t);
        const double c = std::sin(th) * std::cos(th);
        const double expected = std::sqrt(2.0) * 2.0 * c * std::exp(-2.0 * t) * std::abs(std::cos(2.0 * th));
        CHECK(generation_speed(r0, l) == doctest::Approx(expected).epsilon(1e-13));
    }

    // Markov dissipation at theta = pi/4: Gamma e^{-Gamma t}/sqrt(2).
    const std::vector<double> grid = uniform_grid(3.0, 301);
    const auto mem = std::make_shared<const DissipationMemory>(DissipationMemory::markov(1.0, grid));
    const DensityMatrix d0 = from_pure(qubit_state(oracle::pi / 4.0));
    for (double t : {0.0, 1.0, 2.5}) {
        const DensityMatrix rt = dissipation_closed_state(oracle::pi / 4.0, t, *mem);
        const ComplexMatrix l = apply_generator(Generator{Dissipation{mem}}, rt, t);
        CHECK(generation_speed(d0, l) == doctest::Approx(std::exp(-t) / std::sqrt(2.0)).epsilon(1e-12));
    }
}

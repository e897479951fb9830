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

#ifndef QSL_GENERATORS_HPP
#define QSL_GENERATORS_HPP

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qsl/matcore.hpp"
#include "qsl/memory.hpp"

namespace qsl {

/// Raised when propagation hits a positivity violation.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t, double min_eigenvalue)
        : std::runtime_error(what), time_(t), min_eigenvalue_(min_eigenvalue) {}
    double time() const { return time_; }
    double min_eigenvalue() const { return min_eigenvalue_; }

private:
    double time_;
    double min_eigenvalue_;
};

/// Angle schedule: either value0 + rate * t (exact value and rate everywhere)
/// or a piecewise-linear table whose rate is the slope of the segment
/// containing t.
class Schedule {
public:
    static Schedule linear(double value0, double rate);
    static Schedule constant(double value) { return linear(value, 0.0); }
    static Schedule tabulated(std::vector<double> times, std::vector<double> values);

    /// Throw InvalidInput outside a table's time range.
    double value(double t) const;
    double rate(double t) const;

    bool is_tabulated() const { return !times_.empty(); }
    /// True when the rate is the same constant everywhere.
    bool has_constant_rate() const;

private:
    Schedule() = default;
    std::size_t segment(double t) const;

    double value0_ = 0.0;
    double rate_ = 0.0;
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Two-parameter control: theta(t) and alpha(t). theta0 is theta.value(0).
struct UnitaryControl {
    Schedule theta = Schedule::constant(0.0);
    Schedule alpha = Schedule::constant(0.0);
};

/// U = cos(theta) + i sin(theta)(sigma_x cos(alpha) + sigma_y sin(alpha)).
ComplexMatrix unitary_2l(const UnitaryControl& c, double t);

/// H = i dU/dt U^dagger expanded in Pauli components.
ComplexMatrix hamiltonian_2l(const UnitaryControl& c, double t);

/// Three-level STIRAP Hamiltonian, levels ordered (|2>, |1>, |0>).
ComplexMatrix hamiltonian_stirap(const UnitaryControl& c, double t);

struct Unitary2L {
    UnitaryControl control;
};

struct Stirap {
    UnitaryControl control;
};

struct Dephasing {
    MemoryFunctions memory;
    /// Multiplies the dephasing rate. Anything other than 1 breaks the model;
    /// it exists for mutation tests of the validation suite.
    double rate_scale = 1.0;
};

struct Dissipation {
    std::shared_ptr<const DissipationMemory> memory;
};

using Generator = std::variant<Unitary2L, Stirap, Dephasing, Dissipation>;

std::string describe(const Generator& g);
std::size_t generator_dim(const Generator& g);

/// L rho at time t. Throws InvalidInput for a dissipation time outside the
/// memory grid or a dimension mismatch.
ComplexMatrix apply_generator(const Generator& g, const ComplexMatrix& rho, double t);
inline ComplexMatrix apply_generator(const Generator& g, const DensityMatrix& rho, double t) {
    return apply_generator(g, rho.matrix(), t);
}

/// Start state the closed forms assume for each family:
/// U(0)|0><0|U(0)^dagger for Unitary2L, cos th0 |0> - sin th0 |2> for Stirap.
DensityMatrix unitary_start_state(const UnitaryControl& c);
DensityMatrix stirap_start_state(const UnitaryControl& c);

/// Closed-form U(t)|0><0|U(t)^dagger.
DensityMatrix unitary_closed_state(const UnitaryControl& c, double t);

struct Trajectory {
    std::vector<double> grid;
    std::vector<DensityMatrix> states;
    DensityMatrix rho0 = DensityMatrix::trusted(ComplexMatrix(1));
    std::vector<double> q_samples;      // Q(rho0, rho_t)
    std::vector<double> rate_samples;   // dQ/dt from the exact rate formula
    std::vector<double> speed_samples;  // ||[rho0, L rho_t]||
    std::vector<double> overlap_samples;      // Tr(rho0 rho_t)
    std::vector<double> lrho0_norm_samples;   // ||L_t rho0||
    std::vector<double> weak_speed_samples;   // ||L rho_t rho0||
    double max_trace_defect = 0.0;
    double max_hermiticity_defect = 0.0;
    double min_eigenvalue = 1.0;

    std::size_t size() const { return grid.size(); }
    double end_time() const { return grid.back(); }
    double max_q() const;
};

struct PropagateOptions {
    double positivity_tol = 1e-6;
};

/// Fixed-step RK4 over the grid, re-Hermitizing after each step.
/// Throws IntegrationError when the minimum eigenvalue drops below
/// -positivity_tol.
Trajectory propagate(const Generator& g, const DensityMatrix& rho0, std::span<const double> grid,
                     PropagateOptions opts = {});

/// One classical RK4 step of size h (negative h steps backwards).
ComplexMatrix rk4_step(const Generator& g, const ComplexMatrix& rho, double t, double h);

/// Uniform grid of `points` times on [0, t_end].
std::vector<double> uniform_grid(double t_end, std::size_t points);

DensityMatrix dephasing_closed_state(double theta, double tau, const MemoryFunctions& m);
DensityMatrix dissipation_closed_state(double theta, double tau, const DissipationMemory& m);

/// GHZ state cos th |1..1> + sin th |0..0> after common dephasing, in the
/// two-dimensional span of |1..1>, |0..0>.
DensityMatrix ghz_dephased_state(double theta, int n, double beta);

}  // namespace qsl

#endif  // QSL_GENERATORS_HPP

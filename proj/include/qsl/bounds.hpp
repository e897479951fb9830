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

#ifndef QSL_BOUNDS_HPP
#define QSL_BOUNDS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsl/generators.hpp"
#include "qsl/memory.hpp"

namespace qsl {

/// A bound that is undefined for the given input, e.g. a state with no
/// coherence to generate quantumness from.
class BoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Q on the trajectory at any time in [0, end], by cubic Hermite interpolation
/// of the Q samples with the exact rate samples as derivatives.
double interpolate_q(const Trajectory& traj, double t);

/// tau_Q = sqrt(Q(rho0, rho_tau)/2) / mean_{[0,tau]} ||[rho0, L rho_t]||.
/// The mean is a trapezoidal average over the trajectory's own grid; an
/// off-grid tau closes the last partial interval by linear interpolation.
double tau_q_from_trajectory(const Trajectory& traj, double tau);

/// 1/4 sin^2(4 theta) (1 - exp(-beta))^2.
double quantumness_dephasing(double theta, double beta);

/// Inverts the dephasing closed form for tau. Markov memory uses
/// -ln(1 - 2 sqrt(q)/|sin 4 theta|) / (2 Gamma); otherwise bisection on beta.
double tau_q_dephasing(double q, double theta, const MemoryFunctions& m);

struct UnitaryQsl {
    double tau_q = 0.0;           // numerator / mean_sqrt_x
    double numerator = 0.0;       // sqrt(Q(rho_start, rho_tau)/2)
    double mean_sqrt_x = 0.0;     // trapezoidal mean of sqrt(X)
    double tau_q_exact_speed = 0.0;  // same numerator over the mean of ||[rho0, L rho_t]||
    double max_x_discrepancy = 0.0;  // max |sqrt(X) - ||[rho0, L rho_t]|||
    /// tau/|alpha(tau)|, reported for theta fixed at pi/4 with constant
    /// alpha rate; not the value of the bound.
    std::optional<double> quarter_pi_claim;
};

/// Closed-form two-level unitary bound with
/// X = -2 a' sin^2 th sin 4th (a' cos^2 a sin th + th' sin 2a)
///     + 2 th'^2 cos^2 2th + a'^2 sin^2 th,
/// averaged on `samples` points.
UnitaryQsl tau_q_unitary(const UnitaryControl& c, double tau, std::size_t samples = 10000);

/// Dissipation quantumness in terms of b = Re xi, c = Im xi.
double quantumness_dissipation(double theta, double b, double c);

/// ||[rho0, L rho_t]|| for dissipation from the stored P, b, c, d.
double speed_dissipation(double theta, double t, const DissipationMemory& m);

enum class TauBMode {
    initial,        // ||L_0 rho0||
    time_averaged,  // mean over [0, tau] of ||L_t rho0||
};

/// |1 - Tr(rho0 rho_tau)| / ||L rho0||.
double tau_b_fidelity(const Trajectory& traj, double tau, TauBMode mode = TauBMode::initial);

/// sqrt(Q/2) / (2 mean ||L rho_t rho0||): the looser triangle-inequality bound.
double tau_weak(const Trajectory& traj, double tau);

struct Crossing {
    std::optional<double> time;  // empty when unreached
    double max_q = 0.0;
};

/// First time Q(t) reaches q_target. Brackets on the samples, then solves on
/// the Hermite interpolant.
Crossing first_crossing_time(const Trajectory& traj, double q_target);

struct BoundReport {
    std::string model;
    double q_target = 0.0;
    std::optional<double> tau_exact;
    std::optional<double> tau_q_numeric;
    std::optional<double> tau_q_closed;
    std::optional<double> tau_b;
    std::optional<double> tau_b_avg;
    std::optional<double> tau_weak;
    std::optional<double> slack;  // tau_exact - tau_q_numeric
};

/// Numeric fields of a report; tau_q_closed is left for the caller.
BoundReport evaluate_bounds(const Trajectory& traj, double q_target, const std::string& model);

/// `count` log-spaced targets on [1e-3 hi, hi] with hi = 0.95 max_q.
std::vector<double> q_grid(double max_q, std::size_t count = 20);

/// Trapezoidal integral of samples over [0, tau] on the grid, closing an
/// off-grid tau by linear interpolation.
double integrate_samples(const std::vector<double>& grid, const std::vector<double>& samples, double tau);

}  // namespace qsl

#endif  // QSL_BOUNDS_HPP

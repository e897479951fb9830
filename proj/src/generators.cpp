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

#include "qsl/generators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsl/witness.hpp"

namespace qsl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Schedule Schedule::linear(double value0, double rate) {
    Schedule s;
    s.value0_ = value0;
    s.rate_ = rate;
    return s;
}

Schedule Schedule::tabulated(std::vector<double> times, std::vector<double> values) {
    if (times.size() < 2 || times.size() != values.size()) {
        throw InvalidInput("tabulated schedule needs matching times/values with at least two knots");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw InvalidInput("schedule knots must be strictly increasing");
    }
    Schedule s;
    s.times_ = std::move(times);
    s.values_ = std::move(values);
    return s;
}

std::size_t Schedule::segment(double t) const {
    if (!(t >= times_.front() && t <= times_.back())) {
        std::ostringstream os;
        os << "schedule undefined at t=" << t << " (table covers [" << times_.front() << ", "
           << times_.back() << "])";
        throw InvalidInput(os.str());
    }
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - times_.begin());
    k = k == 0 ? 0 : k - 1;
    return std::min(k, times_.size() - 2);
}

double Schedule::value(double t) const {
    if (!is_tabulated()) return value0_ + rate_ * t;
    const std::size_t k = segment(t);
    const double w = (t - times_[k]) / (times_[k + 1] - times_[k]);
    return values_[k] + w * (values_[k + 1] - values_[k]);
}

double Schedule::rate(double t) const {
    if (!is_tabulated()) return rate_;
    const std::size_t k = segment(t);
    return (values_[k + 1] - values_[k]) / (times_[k + 1] - times_[k]);
}

bool Schedule::has_constant_rate() const {
    if (!is_tabulated()) return true;
    const double r0 = (values_[1] - values_[0]) / (times_[1] - times_[0]);
    for (std::size_t k = 1; k + 1 < times_.size(); ++k) {
        const double r = (values_[k + 1] - values_[k]) / (times_[k + 1] - times_[k]);
        if (std::abs(r - r0) > 1e-14 * std::max(1.0, std::abs(r0))) return false;
    }
    return true;
}

ComplexMatrix unitary_2l(const UnitaryControl& c, double t) {
    const double th = c.theta.value(t);
    const double al = c.alpha.value(t);
    ComplexMatrix u = ComplexMatrix::identity(2) * std::cos(th);
    u += (pauli::x() * std::cos(al) + pauli::y() * std::sin(al)) * (kI * std::sin(th));
    return u;
}

ComplexMatrix hamiltonian_2l(const UnitaryControl& c, double t) {
    const double th = c.theta.value(t);
    const double al = c.alpha.value(t);
    const double th_dot = c.theta.rate(t);
    const double al_dot = c.alpha.rate(t);
    const double s = std::sin(th);
    const double co = std::cos(th);
    const double hx = -th_dot * std::cos(al) + al_dot * s * co * std::sin(al);
    const double hy = -(th_dot * std::sin(al) + al_dot * s * co * std::cos(al));
    const double hz = al_dot * s * s;
    return pauli::x() * hx + pauli::y() * hy + pauli::z() * hz;
}

ComplexMatrix hamiltonian_stirap(const UnitaryControl& c, double t) {
    const double th = c.theta.value(t);
    const double th_dot = c.theta.rate(t);
    const double al_dot = c.alpha.rate(t);
    const double a = al_dot * std::cos(th);
    const double b = al_dot * std::sin(th);
    ComplexMatrix h(3, {0.0, a, -th_dot,
                        -a, 0.0, -b,
                        th_dot, b, 0.0});
    return h * kI;
}

std::string describe(const Generator& g) {
    return std::visit(overloaded{
                          [](const Unitary2L&) { return std::string("unitary2l"); },
                          [](const Stirap&) { return std::string("stirap"); },
                          [](const Dephasing& d) {
                              return std::string(d.memory.is_markov() ? "dephasing-markov" : "dephasing");
                          },
                          [](const Dissipation& d) {
                              return std::string(d.memory->is_markov() ? "dissipation-markov" : "dissipation");
                          },
                      },
                      g);
}

std::size_t generator_dim(const Generator& g) {
    return std::holds_alternative<Stirap>(g) ? 3 : 2;
}

ComplexMatrix apply_generator(const Generator& g, const ComplexMatrix& rho, double t) {
    if (rho.dim() != generator_dim(g)) {
        throw InvalidInput("state dimension " + std::to_string(rho.dim()) + " does not match " +
                           describe(g) + " generator");
    }
    return std::visit(
        overloaded{
            [&](const Unitary2L& u) {
                return commutator(hamiltonian_2l(u.control, t), rho) * (-kI);
            },
            [&](const Stirap& s) {
                return commutator(hamiltonian_stirap(s.control, t), rho) * (-kI);
            },
            [&](const Dephasing& d) {
                // f (sigma_z rho sigma_z - rho) negates and doubles the coherences.
                const double f = d.rate_scale * d.memory.f(t);
                ComplexMatrix out(2);
                out(0, 1) = -2.0 * f * rho(0, 1);
                out(1, 0) = -2.0 * f * rho(1, 0);
                return out;
            },
            [&](const Dissipation& d) {
                const complex p = d.memory->p(t);
                const ComplexMatrix sm = pauli::minus();
                const ComplexMatrix sp = pauli::plus();
                const ComplexMatrix term = commutator(sm * rho, sp) * p;
                return term + term.adjoint();
            },
        },
        g);
}

DensityMatrix unitary_start_state(const UnitaryControl& c) { return unitary_closed_state(c, 0.0); }

DensityMatrix stirap_start_state(const UnitaryControl& c) {
    const double th0 = c.theta.value(0.0);
    return from_pure(StateVector::normalized({-std::sin(th0), 0.0, std::cos(th0)}));
}

DensityMatrix unitary_closed_state(const UnitaryControl& c, double t) {
    const ComplexMatrix u = unitary_2l(c, t);
    // Column of U for the ground state |0> (index 1).
    return from_pure(StateVector::normalized({u(0, 1), u(1, 1)}));
}

double Trajectory::max_q() const {
    return q_samples.empty() ? 0.0 : *std::max_element(q_samples.begin(), q_samples.end());
}

ComplexMatrix rk4_step(const Generator& g, const ComplexMatrix& rho, double t, double h) {
    const ComplexMatrix k1 = apply_generator(g, rho, t);
    const ComplexMatrix k2 = apply_generator(g, rho + k1 * (0.5 * h), t + 0.5 * h);
    const ComplexMatrix k3 = apply_generator(g, rho + k2 * (0.5 * h), t + 0.5 * h);
    const ComplexMatrix k4 = apply_generator(g, rho + k3 * h, t + h);
    return rho + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
}

std::vector<double> uniform_grid(double t_end, std::size_t points) {
    if (points < 2 || !(t_end > 0.0)) throw InvalidInput("uniform grid needs t_end > 0 and >= 2 points");
    std::vector<double> grid(points);
    const double h = t_end / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) grid[i] = h * static_cast<double>(i);
    grid.back() = t_end;
    return grid;
}

Trajectory propagate(const Generator& g, const DensityMatrix& rho0, std::span<const double> grid,
                     PropagateOptions opts) {
    if (grid.empty() || grid.front() != 0.0) throw InvalidInput("propagation grid must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw InvalidInput("propagation grid must be strictly increasing");
    }

    Trajectory traj;
    traj.grid.assign(grid.begin(), grid.end());
    traj.rho0 = rho0;
    traj.states.reserve(grid.size());
    for (auto* v : {&traj.q_samples, &traj.rate_samples, &traj.speed_samples, &traj.overlap_samples,
                    &traj.lrho0_norm_samples, &traj.weak_speed_samples}) {
        v->reserve(grid.size());
    }

    auto record = [&](const ComplexMatrix& rho, const ComplexMatrix& lrho, double t) {
        const DensityMatrix state = DensityMatrix::trusted(rho);
        traj.q_samples.push_back(quantumness(rho0, state));
        traj.rate_samples.push_back(quantumness_rate(rho0, state, lrho));
        traj.speed_samples.push_back(generation_speed(rho0, lrho));
        traj.overlap_samples.push_back(trace_of_product(rho0.matrix(), rho).real());
        traj.lrho0_norm_samples.push_back(hs_norm(apply_generator(g, rho0.matrix(), t)));
        traj.weak_speed_samples.push_back(hs_norm(lrho * rho0.matrix()));
        traj.states.push_back(state);

        const auto diag = validate_density(rho, opts.positivity_tol);
        traj.max_trace_defect = std::max(traj.max_trace_defect, diag.trace_defect);
        traj.max_hermiticity_defect = std::max(traj.max_hermiticity_defect, diag.hermiticity_defect);
        traj.min_eigenvalue = std::min(traj.min_eigenvalue, diag.min_eigenvalue);
        if (diag.min_eigenvalue < -opts.positivity_tol) {
            std::ostringstream os;
            os << describe(g) << ": positivity violated at t=" << t << " (min eigenvalue "
               << diag.min_eigenvalue << ")";
            throw IntegrationError(os.str(), t, diag.min_eigenvalue);
        }
    };

    ComplexMatrix rho = rho0.matrix();
    ComplexMatrix k1 = apply_generator(g, rho, grid[0]);
    record(rho, k1, grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double t = grid[i - 1];
        const double h = grid[i] - t;
        const ComplexMatrix k2 = apply_generator(g, rho + k1 * (0.5 * h), t + 0.5 * h);
        const ComplexMatrix k3 = apply_generator(g, rho + k2 * (0.5 * h), t + 0.5 * h);
        const ComplexMatrix k4 = apply_generator(g, rho + k3 * h, grid[i]);
        rho = hermitian_part(rho + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0));
        k1 = apply_generator(g, rho, grid[i]);
        record(rho, k1, grid[i]);
    }
    return traj;
}

DensityMatrix dephasing_closed_state(double theta, double tau, const MemoryFunctions& m) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double coh = s * c * std::exp(-m.beta(tau));
    return DensityMatrix::trusted(ComplexMatrix(2, {c * c, coh, coh, s * s}));
}

DensityMatrix dissipation_closed_state(double theta, double tau, const DissipationMemory& m) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const complex xi = m.xi(tau);
    const double excited = c * c * std::exp(-2.0 * xi.real());
    const complex coh = s * c * std::exp(-xi);
    return DensityMatrix::trusted(ComplexMatrix(2, {excited, coh, std::conj(coh), 1.0 - excited}));
}

DensityMatrix ghz_dephased_state(double theta, int n, double beta) {
    if (n < 1) throw InvalidInput("GHZ qubit count must be >= 1");
    if (!(beta >= 0.0)) throw InvalidInput("GHZ dephasing exponent must be >= 0");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double coh = s * c * std::exp(-static_cast<double>(n) * n * beta);
    return DensityMatrix::trusted(ComplexMatrix(2, {c * c, coh, coh, s * s}));
}

}  // namespace qsl

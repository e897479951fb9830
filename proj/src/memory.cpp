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

#include "qsl/memory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsl {

namespace {

void require_nonnegative_time(double t, const char* what) {
    if (!(t >= 0.0)) {
        throw InvalidInput(std::string(what) + ": time must be nonnegative, got " + std::to_string(t));
    }
}

void require_grid(std::span<const double> grid) {
    if (grid.size() < 2) throw InvalidInput("time grid needs at least two points");
    if (grid.front() != 0.0) throw InvalidInput("time grid must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw InvalidInput("time grid must be strictly increasing");
    }
}

// x - (1 - exp(-x)), accurate for small x.
double x_minus_one_minus_exp(double x) {
    if (x < 1e-3) {
        return x * x * (0.5 - x * (1.0 / 6.0 - x * (1.0 / 24.0 - x / 120.0)));
    }
    return x + std::expm1(-x);
}

}  // namespace

void OUParams::validate() const {
    if (!(coupling > 0.0) || !std::isfinite(coupling)) {
        throw InvalidInput("coupling Gamma must be positive, got " + std::to_string(coupling));
    }
    if (!(memory > 0.0) || !std::isfinite(memory)) {
        throw InvalidInput("memory rate gamma must be positive, got " + std::to_string(memory));
    }
}

complex ou_kernel(double t, double s, const OUParams& p) {
    return 0.5 * p.coupling * p.memory * std::exp(-p.memory * std::abs(t - s));
}

complex gbar(double t, const OUParams& p) {
    require_nonnegative_time(t, "gbar");
    return -0.5 * p.coupling * std::expm1(-p.memory * t);
}

double beta_integral(double tau, const OUParams& p) {
    require_nonnegative_time(tau, "beta_integral");
    return 2.0 * p.coupling * x_minus_one_minus_exp(p.memory * tau) / p.memory;
}

MarkovLimits markov_limits(const OUParams& p) { return {p.coupling, 0.5 * p.coupling}; }

MemoryFunctions::MemoryFunctions(OUParams params) : params_(params) { params_.validate(); }

MemoryFunctions MemoryFunctions::markov(double coupling) {
    OUParams p{coupling, 1.0};
    p.validate();
    return MemoryFunctions(p, true);
}

complex MemoryFunctions::gbar(double t) const {
    if (markov_) {
        require_nonnegative_time(t, "gbar");
        return 0.5 * params_.coupling;
    }
    return qsl::gbar(t, params_);
}

double MemoryFunctions::f(double t) const { return 2.0 * gbar(t).real(); }

double MemoryFunctions::beta(double tau) const {
    if (markov_) {
        require_nonnegative_time(tau, "beta_integral");
        return 2.0 * params_.coupling * tau;
    }
    return beta_integral(tau, params_);
}

double riccati_step(const OUParams& p) {
    return std::min(1.0 / (50.0 * p.memory), 1.0 / (50.0 * p.coupling));
}

DissipationMemory DissipationMemory::markov(double coupling, std::span<const double> grid) {
    require_grid(grid);
    DissipationMemory m;
    m.params_ = OUParams{coupling, 1.0};
    m.params_.validate();
    m.markov_ = true;
    m.grid_.assign(grid.begin(), grid.end());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0) m.sample_t_.push_back(0.5 * (grid[i - 1] + grid[i]));
        m.sample_t_.push_back(grid[i]);
    }
    for (double t : m.sample_t_) {
        m.p_.push_back(0.5 * coupling);
        m.dp_.push_back(0.0);
        m.xi_.push_back(0.5 * coupling * t);
    }
    return m;
}

complex DissipationMemory::rhs(complex p) const {
    return 0.5 * params_.coupling * params_.memory - params_.memory * p + p * p;
}

// Times within a few ulps of the grid ends count as on the grid.
bool DissipationMemory::covers(double t) const {
    const double slack = 1e-12 * std::max(1.0, std::abs(grid_.back()));
    return t >= grid_.front() - slack && t <= grid_.back() + slack;
}

std::size_t DissipationMemory::locate(double t) const {
    if (!covers(t)) {
        throw InvalidInput("time " + std::to_string(t) + " outside dissipation memory grid [" +
                           std::to_string(grid_.front()) + ", " + std::to_string(grid_.back()) + "]");
    }
    auto it = std::upper_bound(sample_t_.begin(), sample_t_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - sample_t_.begin());
    k = k == 0 ? 0 : k - 1;
    return std::min(k, sample_t_.size() - 2);
}

complex DissipationMemory::p(double t) const {
    if (markov_) {
        locate(t);
        return 0.5 * params_.coupling;
    }
    const std::size_t k = locate(t);
    t = std::clamp(t, grid_.front(), grid_.back());
    const double h = sample_t_[k + 1] - sample_t_[k];
    const double x = (t - sample_t_[k]) / h;
    const double x2 = x * x;
    const double x3 = x2 * x;
    return (2 * x3 - 3 * x2 + 1) * p_[k] + (x3 - 2 * x2 + x) * h * dp_[k] +
           (-2 * x3 + 3 * x2) * p_[k + 1] + (x3 - x2) * h * dp_[k + 1];
}

complex DissipationMemory::xi(double t) const {
    if (markov_) {
        locate(t);
        return 0.5 * params_.coupling * t;
    }
    const std::size_t k = locate(t);
    t = std::clamp(t, grid_.front(), grid_.back());
    const double h = sample_t_[k + 1] - sample_t_[k];
    const double x = (t - sample_t_[k]) / h;
    if (x == 0.0) return xi_[k];
    if (x == 1.0) return xi_[k + 1];
    const double x2 = x * x;
    const double x3 = x2 * x;
    const double x4 = x3 * x;
    // Exact integral of the Hermite cubic from the left sample.
    return xi_[k] + h * ((0.5 * x4 - x3 + x) * p_[k] + (0.25 * x4 - 2.0 * x3 / 3.0 + 0.5 * x2) * h * dp_[k] +
                         (-0.5 * x4 + x3) * p_[k + 1] + (0.25 * x4 - x3 / 3.0) * h * dp_[k + 1]);
}

double DissipationMemory::d(double t) const { return (p(t) * std::exp(-xi(t))).imag(); }

DissipationMemory riccati_p(std::span<const double> grid, const OUParams& params) {
    params.validate();
    require_grid(grid);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (params.memory * (grid[i] - grid[i - 1]) > 0.1 * (1.0 + 1e-12)) {
            throw InvalidInput("Riccati step too large: gamma * step must be <= 0.1 (step " +
                               std::to_string(grid[i] - grid[i - 1]) + " at t=" +
                               std::to_string(grid[i - 1]) + ")");
        }
    }

    DissipationMemory m;
    m.params_ = params;
    const double blowup = kRiccatiBlowup * params.coupling;
    const bool check_bounds = params.memory >= 2.0 * params.coupling;

    auto rk4 = [&](complex p, double h) {
        const complex k1 = m.rhs(p);
        const complex k2 = m.rhs(p + 0.5 * h * k1);
        const complex k3 = m.rhs(p + 0.5 * h * k2);
        const complex k4 = m.rhs(p + h * k3);
        return p + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
    auto push = [&](double t, complex p, complex xi) {
        m.sample_t_.push_back(t);
        m.p_.push_back(p);
        m.dp_.push_back(m.rhs(p));
        m.xi_.push_back(xi);
    };

    complex p = 0.0;
    complex xi = 0.0;
    m.grid_.push_back(grid[0]);
    push(grid[0], p, xi);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double t0 = grid[i - 1];
        const double h = grid[i] - t0;
        const complex p_mid = rk4(p, 0.5 * h);
        const complex p_end = rk4(p_mid, 0.5 * h);
        if (!(std::abs(p_mid) <= blowup)) {
            m.divergence_time_ = t0 + 0.5 * h;
            break;
        }
        if (!(std::abs(p_end) <= blowup)) {
            m.divergence_time_ = grid[i];
            break;
        }
        const complex xi_end = xi + h / 6.0 * (p + 4.0 * p_mid + p_end);
        // Midpoint xi from the Hermite integral over the first half-interval.
        const double hh = 0.5 * h;
        const complex xi_mid = xi + hh * (0.5 * (p + p_mid) + hh * (m.rhs(p) - m.rhs(p_mid)) / 12.0);
        push(t0 + hh, p_mid, xi_mid);
        push(grid[i], p_end, xi_end);
        m.grid_.push_back(grid[i]);

        if (xi_mid.real() < xi.real() || xi_end.real() < xi_mid.real()) m.b_monotone_ = false;
        if (check_bounds) {
            for (const complex& v : {p_mid, p_end}) {
                if (v.real() < -1e-12 || v.real() > params.coupling * (1.0 + 1e-12)) m.p_in_bounds_ = false;
            }
        }
        p = p_end;
        xi = xi_end;
    }
    if (m.grid_.size() < 2) {
        throw InvalidInput("Riccati solution diverged within the first grid interval");
    }
    return m;
}

}  // namespace qsl

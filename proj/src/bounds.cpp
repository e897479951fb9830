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

#include "qsl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qsl/witness.hpp"

namespace qsl {

namespace {

void require_on_trajectory(const Trajectory& traj, double t) {
    if (!(t >= 0.0 && t <= traj.end_time())) {
        std::ostringstream os;
        os << "time " << t << " outside trajectory [0, " << traj.end_time() << "]";
        throw InvalidInput(os.str());
    }
}

// Index k with grid[k] <= t <= grid[k + 1].
std::size_t segment_of(const std::vector<double>& grid, double t) {
    auto it = std::upper_bound(grid.begin(), grid.end(), t);
    std::size_t k = static_cast<std::size_t>(it - grid.begin());
    k = k == 0 ? 0 : k - 1;
    return std::min(k, grid.size() - 2);
}

double hermite(double t0, double t1, double y0, double y1, double d0, double d1, double t) {
    const double h = t1 - t0;
    const double x = (t - t0) / h;
    const double x2 = x * x;
    const double x3 = x2 * x;
    return (2 * x3 - 3 * x2 + 1) * y0 + (x3 - 2 * x2 + x) * h * d0 + (-2 * x3 + 3 * x2) * y1 +
           (x3 - x2) * h * d1;
}

double mean_over(const Trajectory& traj, const std::vector<double>& samples, double tau) {
    return integrate_samples(traj.grid, samples, tau) / tau;
}

}  // namespace

double integrate_samples(const std::vector<double>& grid, const std::vector<double>& samples, double tau) {
    double acc = 0.0;
    std::size_t i = 1;
    for (; i < grid.size() && grid[i] <= tau; ++i) {
        acc += 0.5 * (grid[i] - grid[i - 1]) * (samples[i] + samples[i - 1]);
    }
    if (i < grid.size() && tau > grid[i - 1]) {
        const double w = (tau - grid[i - 1]) / (grid[i] - grid[i - 1]);
        const double end = samples[i - 1] + w * (samples[i] - samples[i - 1]);
        acc += 0.5 * (tau - grid[i - 1]) * (samples[i - 1] + end);
    }
    return acc;
}

double interpolate_q(const Trajectory& traj, double t) {
    require_on_trajectory(traj, t);
    const std::size_t k = segment_of(traj.grid, t);
    if (t == traj.grid[k]) return traj.q_samples[k];
    if (t == traj.grid[k + 1]) return traj.q_samples[k + 1];
    return hermite(traj.grid[k], traj.grid[k + 1], traj.q_samples[k], traj.q_samples[k + 1],
                   traj.rate_samples[k], traj.rate_samples[k + 1], t);
}

double tau_q_from_trajectory(const Trajectory& traj, double tau) {
    require_on_trajectory(traj, tau);
    if (tau == 0.0) return 0.0;
    const double numerator = std::sqrt(std::max(0.0, interpolate_q(traj, tau)) / 2.0);
    const double denominator = mean_over(traj, traj.speed_samples, tau);
    if (denominator <= 0.0) {
        if (numerator == 0.0) return 0.0;
        throw BoundError("no quantumness generation channel");
    }
    return numerator / denominator;
}

double quantumness_dephasing(double theta, double beta) {
    const double s = std::sin(4.0 * theta);
    const double g = -std::expm1(-beta);
    return 0.25 * s * s * g * g;
}

double tau_q_dephasing(double q, double theta, const MemoryFunctions& m) {
    const double s4 = std::abs(std::sin(4.0 * theta));
    if (s4 < 1e-12) throw BoundError("no coherence channel: sin(4 theta) = 0");
    if (q < 0.0) throw InvalidInput("quantumness target must be nonnegative");
    const double ratio = 2.0 * std::sqrt(q) / s4;
    if (ratio >= 1.0) throw BoundError("unreachable quantumness for this initial state");
    if (ratio == 0.0) return 0.0;
    const double beta_target = -std::log1p(-ratio);
    const double gamma_c = m.params().coupling;
    if (m.is_markov()) return beta_target / (2.0 * gamma_c);

    double lo = 0.0;
    double hi = 1e3 / gamma_c;
    if (m.beta(hi) < beta_target) throw BoundError("unreachable quantumness within 1000/Gamma");
    while (hi - lo > 1e-13 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (m.beta(mid) < beta_target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

UnitaryQsl tau_q_unitary(const UnitaryControl& c, double tau, std::size_t samples) {
    if (!(tau > 0.0)) throw InvalidInput("tau_q_unitary needs tau > 0");
    if (samples < 2) throw InvalidInput("tau_q_unitary needs at least two samples");
    UnitaryQsl out;

    const DensityMatrix rho_start = unitary_start_state(c);
    const DensityMatrix rho_end = unitary_closed_state(c, tau);
    const double q_end = quantumness(rho_start, rho_end);
    if (q_end < 1e-24) throw BoundError("commuting endpoint, Q = 0");
    out.numerator = std::sqrt(q_end / 2.0);

    const Generator gen = Unitary2L{c};
    double sum_x = 0.0;
    double sum_exact = 0.0;
    const double h = tau / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = i + 1 == samples ? tau : h * static_cast<double>(i);
        const double th = c.theta.value(t);
        const double al = c.alpha.value(t);
        const double thd = c.theta.rate(t);
        const double ald = c.alpha.rate(t);
        const double s = std::sin(th);
        const double ca = std::cos(al);
        const double c2 = std::cos(2.0 * th);
        const double x = -2.0 * ald * s * s * std::sin(4.0 * th) * (ald * ca * ca * s + thd * std::sin(2.0 * al)) +
                         2.0 * thd * thd * c2 * c2 + ald * ald * s * s;
        const double scale = thd * thd + ald * ald;
        if (x < -1e-12 * std::max(scale, 1e-300)) {
            std::ostringstream os;
            os << "negative X = " << x << " at sample " << i << " (t=" << t << ")";
            throw BoundError(os.str());
        }
        const double sqrt_x = std::sqrt(std::max(x, 0.0));
        const double exact =
            generation_speed(rho_start, apply_generator(gen, unitary_closed_state(c, t), t));
        out.max_x_discrepancy = std::max(out.max_x_discrepancy, std::abs(sqrt_x - exact));
        const double w = (i == 0 || i + 1 == samples) ? 0.5 : 1.0;
        sum_x += w * sqrt_x;
        sum_exact += w * exact;
    }
    out.mean_sqrt_x = sum_x * h / tau;
    const double mean_exact = sum_exact * h / tau;
    if (out.mean_sqrt_x <= 0.0) throw BoundError("no quantumness generation channel");
    out.tau_q = out.numerator / out.mean_sqrt_x;
    out.tau_q_exact_speed = mean_exact > 0.0 ? out.numerator / mean_exact : 0.0;

    const double th0 = c.theta.value(0.0);
    if (c.theta.has_constant_rate() && c.theta.rate(0.0) == 0.0 && c.alpha.has_constant_rate() &&
        std::abs(th0 - std::numbers::pi / 4.0) < 1e-12 && c.alpha.value(tau) != 0.0) {
        out.quarter_pi_claim = tau / std::abs(c.alpha.value(tau));
    }
    return out;
}

double quantumness_dissipation(double theta, double b, double c) {
    const double s2 = std::sin(2.0 * theta);
    if (std::abs(s2) < 1e-12) throw BoundError("quantumness identically zero: sin(2 theta) = 0");
    const double cc = std::cos(theta) * std::cos(theta);
    const complex inner = 1.0 - 2.0 * std::exp(-2.0 * b) * cc + std::exp(complex(-b, -c)) * std::cos(2.0 * theta);
    const double sc = std::sin(c);
    return s2 * s2 * std::norm(inner) + s2 * s2 * s2 * s2 * sc * sc * std::exp(-2.0 * b);
}

double speed_dissipation(double theta, double t, const DissipationMemory& m) {
    const complex p = m.p(t);
    const complex xi = m.xi(t);
    const double b = xi.real();
    const double c = xi.imag();
    const double d = (p * std::exp(-xi)).imag();
    const double s2 = std::sin(2.0 * theta);
    const double cc = std::cos(theta) * std::cos(theta);
    const complex term = p * std::exp(complex(-b, -c)) * std::cos(2.0 * theta) -
                         2.0 * std::exp(-2.0 * b) * (p + std::conj(p)) * cc;
    const double sq = 0.5 * s2 * s2 * (d * d * s2 * s2 + std::norm(term));
    return std::sqrt(sq);
}

double tau_b_fidelity(const Trajectory& traj, double tau, TauBMode mode) {
    require_on_trajectory(traj, tau);
    const std::size_t k = segment_of(traj.grid, tau);
    const double w = (tau - traj.grid[k]) / (traj.grid[k + 1] - traj.grid[k]);
    const double overlap = traj.overlap_samples[k] + w * (traj.overlap_samples[k + 1] - traj.overlap_samples[k]);
    const double numerator = std::abs(1.0 - overlap);
    if (tau == 0.0) return 0.0;
    const double denominator = mode == TauBMode::initial ? traj.lrho0_norm_samples.front()
                                                         : mean_over(traj, traj.lrho0_norm_samples, tau);
    if (denominator <= 0.0) throw BoundError("frozen initial state: ||L rho0|| = 0");
    return numerator / denominator;
}

double tau_weak(const Trajectory& traj, double tau) {
    require_on_trajectory(traj, tau);
    if (tau == 0.0) return 0.0;
    const double numerator = std::sqrt(std::max(0.0, interpolate_q(traj, tau)) / 2.0);
    const double denominator = 2.0 * mean_over(traj, traj.weak_speed_samples, tau);
    if (denominator <= 0.0) throw BoundError("no quantumness generation channel");
    return numerator / denominator;
}

Crossing first_crossing_time(const Trajectory& traj, double q_target) {
    if (q_target < 0.0) throw InvalidInput("quantumness target must be nonnegative");
    Crossing out;
    out.max_q = traj.max_q();
    if (q_target == 0.0) {
        out.time = 0.0;
        return out;
    }
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        if (traj.q_samples[k + 1] < q_target) continue;
        const double t0 = traj.grid[k];
        const double t1 = traj.grid[k + 1];
        auto excess = [&](double t) {
            return hermite(t0, t1, traj.q_samples[k], traj.q_samples[k + 1], traj.rate_samples[k],
                           traj.rate_samples[k + 1], t) - q_target;
        };
        // Scan for the first sign change so a cubic wiggle inside the bracket
        // cannot hand back a later root.
        constexpr int kScan = 8;
        double lo = t0;
        double hi = t1;
        for (int j = 1; j <= kScan; ++j) {
            const double tj = j == kScan ? t1 : t0 + (t1 - t0) * j / kScan;
            if (excess(tj) >= 0.0) {
                hi = tj;
                break;
            }
            lo = tj;
        }
        if (excess(lo) >= 0.0) {
            out.time = lo;
            return out;
        }
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (excess(mid) >= 0.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.time = hi;
        return out;
    }
    return out;
}

BoundReport evaluate_bounds(const Trajectory& traj, double q_target, const std::string& model) {
    BoundReport r;
    r.model = model;
    r.q_target = q_target;
    const Crossing cross = first_crossing_time(traj, q_target);
    r.tau_exact = cross.time;
    if (!cross.time) return r;
    const double t = *cross.time;
    auto attempt = [](auto&& fn) -> std::optional<double> {
        try {
            return fn();
        } catch (const BoundError&) {
            return std::nullopt;
        }
    };
    r.tau_q_numeric = attempt([&] { return tau_q_from_trajectory(traj, t); });
    r.tau_b = attempt([&] { return tau_b_fidelity(traj, t, TauBMode::initial); });
    r.tau_b_avg = attempt([&] { return tau_b_fidelity(traj, t, TauBMode::time_averaged); });
    r.tau_weak = attempt([&] { return tau_weak(traj, t); });
    if (r.tau_q_numeric) r.slack = t - *r.tau_q_numeric;
    return r;
}

std::vector<double> q_grid(double max_q, std::size_t count) {
    std::vector<double> out;
    if (!(max_q > 0.0) || count == 0) return out;
    const double hi = 0.95 * max_q;
    if (count == 1) return {hi};
    const double lo = 1e-3 * hi;
    const double step = std::log(hi / lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out.push_back(lo * std::exp(step * static_cast<double>(i)));
    out.back() = hi;
    return out;
}

}  // namespace qsl

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

#ifndef QSL_MEMORY_HPP
#define QSL_MEMORY_HPP

#include <optional>
#include <span>
#include <vector>

#include "qsl/matcore.hpp"

namespace qsl {

/// Ornstein-Uhlenbeck bath: G(t, s) = (coupling * memory / 2) exp(-memory |t - s|).
/// Large memory rate is the Markov regime, small is strongly non-Markovian.
struct OUParams {
    double coupling = 1.0;  // Gamma
    double memory = 1.0;    // gamma

    /// Throws InvalidInput unless both rates are positive and finite.
    void validate() const;
};

complex ou_kernel(double t, double s, const OUParams& p);

/// Integral of the kernel over [0, t]: (Gamma/2)(1 - exp(-gamma t)).
complex gbar(double t, const OUParams& p);

/// beta(tau) = 2 int_0^tau f(t) dt with f = gbar + conj(gbar).
double beta_integral(double tau, const OUParams& p);

struct MarkovLimits {
    double f_inf = 0.0;
    double p_inf = 0.0;
};

MarkovLimits markov_limits(const OUParams& p);

/// Dephasing memory: closed-form f(t) and beta(tau), optionally pinned to the
/// Markov limit f = Gamma.
class MemoryFunctions {
public:
    explicit MemoryFunctions(OUParams params);
    static MemoryFunctions markov(double coupling);

    const OUParams& params() const { return params_; }
    bool is_markov() const { return markov_; }

    complex gbar(double t) const;
    double f(double t) const;
    double beta(double tau) const;

private:
    MemoryFunctions(OUParams params, bool markov) : params_(params), markov_(markov) {}
    OUParams params_;
    bool markov_ = false;
};

/// Riccati blow-up threshold, in units of the coupling.
inline constexpr double kRiccatiBlowup = 1e3;

/// Dissipation memory P(t) and xi(t) = int_0^t P on a time grid.
///
/// Every grid interval is integrated as two RK4 half-steps, so samples exist at
/// grid nodes and interval midpoints. Values between samples come from cubic
/// Hermite interpolation using the Riccati right-hand side as the derivative,
/// which is exact at the samples and fourth-order in between.
class DissipationMemory {
public:
    static DissipationMemory markov(double coupling, std::span<const double> grid);

    const OUParams& params() const { return params_; }
    bool is_markov() const { return markov_; }

    /// Grid nodes actually covered. Shorter than the requested grid when the
    /// Riccati solution diverged.
    std::span<const double> grid() const { return grid_; }
    std::span<const double> sample_times() const { return sample_t_; }
    std::span<const complex> p_samples() const { return p_; }
    std::span<const complex> xi_samples() const { return xi_; }

    double start_time() const { return grid_.front(); }
    double end_time() const { return grid_.back(); }
    bool covers(double t) const;

    /// Set when |P| exceeded kRiccatiBlowup * coupling; the time of the first
    /// offending substep.
    std::optional<double> divergence_time() const { return divergence_time_; }
    bool b_monotone() const { return b_monotone_; }
    /// For memory >= 2 coupling the solution must stay in [0, coupling].
    bool p_within_fixed_point_bounds() const { return p_in_bounds_; }

    /// Throw InvalidInput outside [start_time, end_time].
    complex p(double t) const;
    complex xi(double t) const;
    double b(double t) const { return xi(t).real(); }
    double c(double t) const { return xi(t).imag(); }
    double d(double t) const;

    friend DissipationMemory riccati_p(std::span<const double> grid, const OUParams& p);

private:
    DissipationMemory() = default;
    complex rhs(complex p) const;
    std::size_t locate(double t) const;

    OUParams params_;
    bool markov_ = false;
    std::vector<double> grid_;
    std::vector<double> sample_t_;
    std::vector<complex> p_;
    std::vector<complex> dp_;
    std::vector<complex> xi_;
    std::optional<double> divergence_time_;
    bool b_monotone_ = true;
    bool p_in_bounds_ = true;
};

/// Integrates dP/dt = Gamma gamma / 2 - gamma P + P^2, P(0) = 0 with
/// fixed-step RK4 and accumulates xi by Simpson's rule over each interval.
/// The grid must start at 0 and satisfy gamma * step <= 0.1. On divergence the
/// result is truncated at the last complete interval and divergence_time()
/// is set.
DissipationMemory riccati_p(std::span<const double> grid, const OUParams& p);

/// Largest step satisfying both rate bounds: min(1/(50 gamma), 1/(50 Gamma)).
double riccati_step(const OUParams& p);

}  // namespace qsl

#endif  // QSL_MEMORY_HPP

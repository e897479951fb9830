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

#ifndef QSL_WITNESS_HPP
#define QSL_WITNESS_HPP

#include <random>

#include "qsl/matcore.hpp"

namespace qsl {

struct QuantumnessSample {
    double t = 0.0;
    double q = 0.0;
    double speed = 0.0;
};

/// Q(a, b) = 2 ||[a, b]||^2. Not clamped; values above 1 indicate a bug.
double quantumness(const DensityMatrix& a, const DensityMatrix& b);

/// The trace form -4 Tr[(ab)^2 - a^2 b^2] of the same quantity.
double quantumness_trace_form(const DensityMatrix& a, const DensityMatrix& b);

/// 4c(1-c) for two pure states with squared overlap c.
double pure_state_quantumness(double overlap_sq);

struct RateDiagnostics {
    double imag_residue = 0.0;  // |Im| of the trace before taking the real part
    double trace_defect = 0.0;  // |Tr L rho_t|
    bool lrho_traceless = true;
};

/// dQ/dt = -4 Tr([rho0, rho_t][rho0, L rho_t]).
double quantumness_rate(const DensityMatrix& rho0, const DensityMatrix& rho_t,
                        const ComplexMatrix& lrho);
double quantumness_rate(const DensityMatrix& rho0, const DensityMatrix& rho_t,
                        const ComplexMatrix& lrho, RateDiagnostics& diag);

/// ||[rho0, L rho_t]||, the speed entering the QSL denominator.
double generation_speed(const DensityMatrix& rho0, const ComplexMatrix& lrho);

/// Haar-like pure state from a normalized complex Gaussian vector.
DensityMatrix random_pure_state(std::size_t dim, std::mt19937_64& rng);

/// W W^dagger / Tr with complex Gaussian W.
DensityMatrix random_mixed_state(std::size_t dim, std::mt19937_64& rng);

}  // namespace qsl

#endif  // QSL_WITNESS_HPP

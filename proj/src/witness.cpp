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

#include "qsl/witness.hpp"

#include <cmath>
#include <string>

namespace qsl {

double quantumness(const DensityMatrix& a, const DensityMatrix& b) {
    const double n = hs_norm(commutator(a.matrix(), b.matrix()));
    return 2.0 * n * n;
}

double quantumness_trace_form(const DensityMatrix& a, const DensityMatrix& b) {
    const ComplexMatrix ab = a.matrix() * b.matrix();
    const ComplexMatrix a2 = a.matrix() * a.matrix();
    const ComplexMatrix b2 = b.matrix() * b.matrix();
    return (-4.0 * (trace_of_product(ab, ab) - trace_of_product(a2, b2))).real();
}

double pure_state_quantumness(double overlap_sq) {
    if (!(overlap_sq >= 0.0 && overlap_sq <= 1.0)) {
        throw InvalidInput("squared overlap must lie in [0, 1], got " + std::to_string(overlap_sq));
    }
    return 4.0 * overlap_sq * (1.0 - overlap_sq);
}

double quantumness_rate(const DensityMatrix& rho0, const DensityMatrix& rho_t,
                        const ComplexMatrix& lrho, RateDiagnostics& diag) {
    const ComplexMatrix c1 = commutator(rho0.matrix(), rho_t.matrix());
    const ComplexMatrix c2 = commutator(rho0.matrix(), lrho);
    const complex tr = -4.0 * trace_of_product(c1, c2);
    diag.imag_residue = std::abs(tr.imag());
    diag.trace_defect = std::abs(lrho.trace());
    diag.lrho_traceless = diag.trace_defect <= 1e-9;
    return tr.real();
}

double quantumness_rate(const DensityMatrix& rho0, const DensityMatrix& rho_t,
                        const ComplexMatrix& lrho) {
    RateDiagnostics unused;
    return quantumness_rate(rho0, rho_t, lrho, unused);
}

double generation_speed(const DensityMatrix& rho0, const ComplexMatrix& lrho) {
    return hs_norm(commutator(rho0.matrix(), lrho));
}

DensityMatrix random_pure_state(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    std::vector<complex> amps(dim);
    for (auto& z : amps) z = complex(gauss(rng), gauss(rng));
    return from_pure(StateVector::normalized(std::move(amps)));
}

DensityMatrix random_mixed_state(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    ComplexMatrix w(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) w(i, j) = complex(gauss(rng), gauss(rng));
    ComplexMatrix rho = w * w.adjoint();
    rho *= complex(1.0 / rho.trace().real());
    return DensityMatrix::trusted(hermitian_part(rho));
}

}  // namespace qsl

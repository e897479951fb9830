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

#include "qsl/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qsl {

namespace {

void check_dim(std::size_t dim) {
    if (dim == 0 || dim > kMaxDim) {
        throw InvalidInput("matrix dimension must be in 1.." + std::to_string(kMaxDim) +
                           ", got " + std::to_string(dim));
    }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw InvalidInput(std::string(what) + ": dimension mismatch (" +
                           std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
    }
}

std::vector<double> eigenvalues_2x2(const ComplexMatrix& a) {
    const double p = a(0, 0).real();
    const double q = a(1, 1).real();
    const double mean = 0.5 * (p + q);
    const double half_gap = std::hypot(0.5 * (p - q), std::abs(a(0, 1)));
    return {mean - half_gap, mean + half_gap};
}

std::vector<double> eigenvalues_3x3(const ComplexMatrix& a) {
    const double off = std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2));
    const double d0 = a(0, 0).real();
    const double d1 = a(1, 1).real();
    const double d2 = a(2, 2).real();
    const double q = (d0 + d1 + d2) / 3.0;
    const double p2 = (d0 - q) * (d0 - q) + (d1 - q) * (d1 - q) + (d2 - q) * (d2 - q) + 2.0 * off;
    if (p2 <= 1e-300) {
        std::vector<double> ev{d0, d1, d2};
        std::sort(ev.begin(), ev.end());
        return ev;
    }
    const double p = std::sqrt(p2 / 6.0);
    ComplexMatrix b = a;
    for (std::size_t i = 0; i < 3; ++i) b(i, i) -= q;
    b *= complex(1.0 / p);
    const complex det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                        b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                        b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    const double r = std::clamp(0.5 * det.real(), -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double hi = q + 2.0 * p * std::cos(phi);
    const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    const double mid = 3.0 * q - hi - lo;
    return {lo, mid, hi};
}

// Jacobi on the real symmetric embedding [[Re A, -Im A], [Im A, Re A]], whose
// spectrum is that of A with every eigenvalue doubled.
std::vector<double> eigenvalues_jacobi(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    const std::size_t m = 2 * n;
    std::vector<double> s(m * m);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return s[i * m + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const complex z = 0.5 * (a(i, j) + std::conj(a(j, i)));
            at(i, j) = z.real();
            at(i + n, j + n) = z.real();
            at(i, j + n) = -z.imag();
            at(i + n, j) = z.imag();
        }
    }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                total += at(i, j) * at(i, j);
                if (i != j) off += at(i, j) * at(i, j);
            }
        }
        if (off <= 1e-30 * std::max(total, 1e-300)) break;
        for (std::size_t p = 0; p + 1 < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < m; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - sn * akq;
                    at(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - sn * aqk;
                    at(q, k) = sn * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> doubled(m);
    for (std::size_t i = 0; i < m; ++i) doubled[i] = at(i, i);
    std::sort(doubled.begin(), doubled.end());
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    return ev;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) { check_dim(dim); }

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<complex> entries)
    : ComplexMatrix(dim) {
    if (entries.size() != dim * dim) {
        throw InvalidInput("entry count must equal dim^2");
    }
    std::copy(entries.begin(), entries.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

complex ComplexMatrix::trace() const {
    complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complex scale) {
    for (auto& z : data_) z *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "matrix product");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const complex aik = a(i, k);
            if (aik == complex(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double worst = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
    return worst;
}

complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "trace_of_product");
    complex t = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
    return t;
}

StateVector::StateVector(std::vector<complex> amplitudes) : amps_(std::move(amplitudes)) {
    check_dim(amps_.size());
    double norm2 = 0.0;
    for (const auto& z : amps_) norm2 += std::norm(z);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) {
        throw InvalidInput("state vector is not normalized (norm " +
                           std::to_string(std::sqrt(norm2)) + ")");
    }
}

StateVector StateVector::normalized(std::vector<complex> amplitudes) {
    double norm2 = 0.0;
    for (const auto& z : amplitudes) norm2 += std::norm(z);
    if (norm2 <= 0.0) throw InvalidInput("cannot normalize a zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : amplitudes) z *= inv;
    return StateVector(std::move(amplitudes));
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    const auto d = validate_density(m_, kHermitianTol);
    if (d.hermiticity_defect > kHermitianTol || d.trace_defect > kTraceTol ||
        d.min_eigenvalue < -kPositivityTol) {
        throw InvalidInput("not a density matrix: hermiticity defect " +
                           std::to_string(d.hermiticity_defect) + ", trace defect " +
                           std::to_string(d.trace_defect) + ", min eigenvalue " +
                           std::to_string(d.min_eigenvalue));
    }
}

DensityMatrix DensityMatrix::checked(ComplexMatrix m, double tol) {
    const auto d = validate_density(m, tol);
    if (!d.passed) {
        throw InvalidInput("not a density matrix at tolerance " + std::to_string(tol) +
                           ": min eigenvalue " + std::to_string(d.min_eigenvalue));
    }
    return DensityMatrix(std::move(m), TrustedTag{});
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) { return DensityMatrix(std::move(m), TrustedTag{}); }

namespace pauli {
ComplexMatrix x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix y() { return ComplexMatrix(2, {0.0, -kI, kI, 0.0}); }
ComplexMatrix z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
ComplexMatrix plus() { return ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0}); }
ComplexMatrix minus() { return ComplexMatrix(2, {0.0, 0.0, 1.0, 0.0}); }
}  // namespace pauli

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "commutator");
    return a * b - b * a;
}

double hs_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

DensityMatrix from_pure(const StateVector& v) {
    const std::size_t n = v.dim();
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
    return DensityMatrix::trusted(std::move(m));
}

StateVector qubit_state(double theta) {
    // Renormalize to absorb the last-ulp drift of cos^2 + sin^2.
    return StateVector::normalized({std::cos(theta), std::sin(theta)});
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
    switch (a.dim()) {
    case 1:
        return {a(0, 0).real()};
    case 2:
        return eigenvalues_2x2(a);
    case 3: {
        // The trigonometric roots lose half the digits near a repeated
        // eigenvalue (pure states have a double zero); Jacobi does not.
        std::vector<double> ev = eigenvalues_3x3(a);
        const double scale = std::max({std::abs(ev[0]), std::abs(ev[2]), 1e-300});
        if (std::min(ev[1] - ev[0], ev[2] - ev[1]) < 1e-3 * scale) ev = eigenvalues_jacobi(a);
        return ev;
    }
    default:
        return eigenvalues_jacobi(a);
    }
}

DensityDiagnostics validate_density(const ComplexMatrix& rho, double tol) {
    DensityDiagnostics d;
    const std::size_t n = rho.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d.hermiticity_defect =
                std::max(d.hermiticity_defect, std::abs(rho(i, j) - std::conj(rho(j, i))));
    d.trace_defect = std::abs(rho.trace() - 1.0);
    d.min_eigenvalue = hermitian_eigenvalues(hermitian_part(rho)).front();
    d.passed = d.hermiticity_defect <= tol && d.trace_defect <= tol && d.min_eigenvalue >= -tol;
    return d;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    ComplexMatrix h = a + a.adjoint();
    h *= complex(0.5);
    return h;
}

}  // namespace qsl

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

#ifndef QSL_MATCORE_HPP
#define QSL_MATCORE_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace qsl {

using complex = std::complex<double>;

inline constexpr complex kI{0.0, 1.0};
inline constexpr std::size_t kMaxDim = 32;

/// Thrown for malformed operands: dimension mismatches, unnormalized states,
/// out-of-range arguments.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense square complex matrix, row-major, dimension 1..32.
///
/// Basis convention: index k holds level |dim-1-k>. For a qubit this puts the
/// excited state |1> at index 0 and the ground state |0> at index 1, so
/// sigma_z = diag(1, -1) and sigma_- = |0><1| has its single entry at (1, 0).
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::initializer_list<complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);

    std::size_t dim() const { return dim_; }

    complex operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
    complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }

    std::span<const complex> entries() const { return data_; }

    ComplexMatrix adjoint() const;
    complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
    friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= complex(s); }
    friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= complex(s); }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= complex(-1.0); }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    std::size_t dim_;
    std::vector<complex> data_;
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(a b) without forming the product.
complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Unit-norm complex vector.
class StateVector {
public:
    /// Throws InvalidInput unless the Euclidean norm is 1 within 1e-12.
    explicit StateVector(std::vector<complex> amplitudes);

    /// Scales a nonzero vector to unit norm.
    static StateVector normalized(std::vector<complex> amplitudes);

    std::size_t dim() const { return amps_.size(); }
    std::span<const complex> amplitudes() const { return amps_; }
    complex operator[](std::size_t i) const { return amps_[i]; }

private:
    std::vector<complex> amps_;
};

struct DensityDiagnostics {
    double hermiticity_defect = 0.0;  // max |rho - rho^dagger| entrywise
    double trace_defect = 0.0;        // |Tr rho - 1|
    double min_eigenvalue = 0.0;
    bool passed = false;
};

/// Validated density matrix: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
public:
    static constexpr double kHermitianTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kPositivityTol = 1e-8;

    /// Validates with the default tolerances above.
    explicit DensityMatrix(ComplexMatrix m);

    /// Validates with one tolerance applied to all three checks.
    static DensityMatrix checked(ComplexMatrix m, double tol);

    /// Wraps without validation. Used by the integrator, which performs its
    /// own positivity check after every step.
    static DensityMatrix trusted(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.dim(); }
    complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

private:
    struct TrustedTag {};
    DensityMatrix(ComplexMatrix m, TrustedTag) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
ComplexMatrix plus();   // sigma_+ = |1><0|
ComplexMatrix minus();  // sigma_- = |0><1|
}  // namespace pauli

/// a b - b a. Throws InvalidInput on dimension mismatch.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// sqrt(Tr(A^dagger A)).
double hs_norm(const ComplexMatrix& a);

/// Rank-one projector |v><v|.
DensityMatrix from_pure(const StateVector& v);

/// Qubit state cos(theta)|1> + sin(theta)|0>.
StateVector qubit_state(double theta);

/// Eigenvalues of a Hermitian matrix in ascending order. Closed forms for
/// dim <= 3, cyclic Jacobi otherwise.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

DensityDiagnostics validate_density(const ComplexMatrix& rho, double tol);
inline DensityDiagnostics validate_density(const DensityMatrix& rho, double tol) {
    return validate_density(rho.matrix(), tol);
}

/// (a + a^dagger) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& a);

}  // namespace qsl

#endif  // QSL_MATCORE_HPP

// Copyright 2026 The qthermo Authors
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

#ifndef QTHERMO_OPERATORS_HPP
#define QTHERMO_OPERATORS_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "qthermo/errors.hpp"

namespace qthermo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Default tolerances for the type invariants.
inline constexpr double kHermTol = 1e-12;     // per-entry |m - m†|
inline constexpr double kTraceTol = 1e-10;    // |tr(rho) - 1|
inline constexpr double kPsdTol = 1e-10;      // eigenvalue clamping window
inline constexpr double kReconTol = 1e-10;    // V diag(w) V† reconstruction, relative Frobenius
inline constexpr double kSuppTol = 1e-12;     // support threshold for relative entropy
inline constexpr double kUnitaryTol = 1e-8;   // ||U†U - I||_F accepted by evolve()

// Ordered subsystem dimensions identifying the tensor factorization of a
// composite space. Factor 0 is the most significant index (kron order).
class Partition {
 public:
  explicit Partition(std::vector<Index> dims);

  const std::vector<Index>& dims() const { return dims_; }
  std::size_t size() const { return dims_.size(); }
  Index dim(std::size_t factor) const { return dims_[factor]; }
  Index total_dim() const { return total_; }

  // Throws DimensionError unless total_dim() == dim.
  void require_total(Index dim) const;

 private:
  std::vector<Index> dims_;
  Index total_ = 1;
};

// Eigendecomposition of a Hermitian operator: real eigenvalues ascending,
// orthonormal eigenvectors as the columns of `eigenvectors`.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

// Self-adjoint complex matrix (Hamiltonians, observables).
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix matrix, double herm_tol = kHermTol);

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

// Positive semidefinite, unit-trace state of a system or subsystem.
//
// Construction validates hermiticity, trace and positivity. Eigenvalues in
// [-psd_tol, 0) are clamped to zero and the spectrum renormalized to unit
// trace (the matrix is rebuilt from the clamped spectrum in that case);
// anything below -psd_tol throws PositivityError. The spectral decomposition
// is kept, so entropy functionals never re-diagonalize.
class DensityOperator {
 public:
  explicit DensityOperator(const ComplexMatrix& matrix,
                           double herm_tol = kHermTol,
                           double trace_tol = kTraceTol,
                           double psd_tol = kPsdTol);

  // Rank-one projector |psi><psi|; psi must be normalized within trace_tol.
  static DensityOperator pure(const ComplexVector& psi);

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  // Clamped spectrum, ascending, and the matching eigenvectors.
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }

 private:
  DensityOperator() = default;

  ComplexMatrix matrix_;
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
};

// --- Standard building blocks ------------------------------------------------

ComplexMatrix identity_matrix(Index dim);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix sigma_plus();   // |1><0|
ComplexMatrix sigma_minus();  // |0><1|
// Bosonic annihilation operator on a truncated Fock space: b|m> = sqrt(m)|m-1>.
ComplexMatrix annihilation_operator(Index dim);

// --- Operations ---------------------------------------------------------------

// Kronecker product; dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Partial trace keeping the listed factors (strictly increasing indices).
// The matrix-level overload does no state validation.
ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, const Partition& p,
                                   const std::vector<std::size_t>& keep);
DensityOperator partial_trace(const DensityOperator& rho, const Partition& p,
                              const std::vector<std::size_t>& keep);

// Spectral decomposition of a Hermitian operator.
SpectralDecomposition hermitian_eig(const HermitianOperator& h);

// Operator function V f(diag(lambda)) V†. Throws DomainError if f evaluates
// to a non-finite value on the spectrum.
HermitianOperator op_func(const HermitianOperator& h,
                          const std::function<double(double)>& f);

// Unitary propagator e^{-iHt} (hbar = 1). The SpectralDecomposition overload
// reuses a precomputed decomposition of the same Hamiltonian.
ComplexMatrix propagator(const HermitianOperator& h, double t);
ComplexMatrix propagator(const SpectralDecomposition& eig, double t);

// Conjugation U rho U†. Throws UnitarityError when ||U†U - I||_F > tol.
DensityOperator evolve(const DensityOperator& rho, const ComplexMatrix& u,
                       double unitary_tol = kUnitaryTol);

// Real part of tr(h * rho); the imaginary part vanishes for Hermitian pairs.
double expectation_value(const HermitianOperator& h, const DensityOperator& rho);
double expectation_value(const ComplexMatrix& h, const ComplexMatrix& rho);

}  // namespace qthermo

#endif  // QTHERMO_OPERATORS_HPP

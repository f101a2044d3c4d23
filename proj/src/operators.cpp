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

#include "qthermo/operators.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qthermo {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows()
       << "x" << m.cols();
    throw DimensionError(os.str());
  }
}

double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> solve_self_adjoint(
    const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericError("self-adjoint eigensolver failed to converge");
  }
  return solver;
}

}  // namespace

Partition::Partition(std::vector<Index> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw DimensionError("partition must contain at least one factor");
  }
  for (Index d : dims_) {
    if (d <= 0) {
      throw DimensionError("partition dimensions must be positive");
    }
    total_ *= d;
  }
}

void Partition::require_total(Index dim) const {
  if (total_ != dim) {
    std::ostringstream os;
    os << "partition covers dimension " << total_ << " but the operator has dimension "
       << dim;
    throw DimensionError(os.str());
  }
}

HermitianOperator::HermitianOperator(ComplexMatrix matrix, double herm_tol)
    : matrix_(std::move(matrix)) {
  require_square(matrix_, "HermitianOperator");
  const double defect = hermiticity_defect(matrix_);
  if (defect > herm_tol) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max |m - m^dagger| = " << defect;
    throw HermiticityError(os.str());
  }
}

DensityOperator::DensityOperator(const ComplexMatrix& matrix, double herm_tol,
                                 double trace_tol, double psd_tol) {
  require_square(matrix, "DensityOperator");
  const double defect = hermiticity_defect(matrix);
  if (defect > herm_tol) {
    std::ostringstream os;
    os << "density operator is not Hermitian: max |m - m^dagger| = " << defect;
    throw HermiticityError(os.str());
  }
  const double trace = matrix.trace().real();
  if (std::abs(matrix.trace() - Complex(1.0, 0.0)) > trace_tol) {
    std::ostringstream os;
    os << "density operator trace " << trace << " deviates from 1 beyond " << trace_tol;
    throw TraceError(os.str());
  }

  auto solver = solve_self_adjoint(matrix);
  RealVector values = solver.eigenvalues();
  if (values(0) < -psd_tol) {
    std::ostringstream os;
    os << "density operator has eigenvalue " << values(0) << " below -" << psd_tol;
    throw PositivityError(os.str());
  }

  bool clamped = false;
  for (Index i = 0; i < values.size(); ++i) {
    if (values(i) < 0.0) {
      values(i) = 0.0;
      clamped = true;
    }
  }
  eigenvectors_ = solver.eigenvectors();
  if (clamped) {
    values /= values.sum();
    ComplexMatrix rebuilt =
        eigenvectors_ * values.asDiagonal() * eigenvectors_.adjoint();
    matrix_ = 0.5 * (rebuilt + rebuilt.adjoint());
  } else {
    matrix_ = matrix;
  }
  eigenvalues_ = std::move(values);
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  if (psi.size() == 0) {
    throw DimensionError("pure state vector must be non-empty");
  }
  return DensityOperator(ComplexMatrix(psi * psi.adjoint()));
}

ComplexMatrix identity_matrix(Index dim) {
  return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix sigma_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix sigma_minus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

ComplexMatrix annihilation_operator(Index dim) {
  if (dim <= 0) {
    throw DimensionError("Fock space dimension must be positive");
  }
  ComplexMatrix b = ComplexMatrix::Zero(dim, dim);
  for (Index m = 1; m < dim; ++m) {
    b(m - 1, m) = std::sqrt(static_cast<double>(m));
  }
  return b;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, const Partition& p,
                                   const std::vector<std::size_t>& keep) {
  require_square(m, "partial_trace");
  p.require_total(m.rows());
  if (keep.empty()) {
    throw DimensionError("partial_trace: keep set must be non-empty");
  }
  const std::size_t n_factors = p.size();
  std::vector<bool> kept(n_factors, false);
  for (std::size_t f : keep) {
    if (f >= n_factors) {
      throw DimensionError("partial_trace: keep index out of range");
    }
    if (kept[f]) {
      throw DimensionError("partial_trace: duplicate keep index");
    }
    kept[f] = true;
  }
  if (!std::is_sorted(keep.begin(), keep.end())) {
    throw DimensionError("partial_trace: keep indices must be increasing");
  }

  // Row-major mixed-radix strides: factor 0 is most significant.
  std::vector<Index> stride(n_factors);
  stride[n_factors - 1] = 1;
  for (std::size_t f = n_factors - 1; f > 0; --f) {
    stride[f - 1] = stride[f] * p.dim(f);
  }

  Index keep_dim = 1;
  Index trace_dim = 1;
  for (std::size_t f = 0; f < n_factors; ++f) {
    (kept[f] ? keep_dim : trace_dim) *= p.dim(f);
  }

  // Enumerate base offsets of the kept and traced index groups once.
  auto offsets_for = [&](bool want_kept, Index count) {
    std::vector<Index> offsets(static_cast<std::size_t>(count), 0);
    Index repeat = 1;
    for (std::size_t f = n_factors; f-- > 0;) {
      if (kept[f] != want_kept) continue;
      const Index d = p.dim(f);
      const Index block = repeat * d;
      for (Index idx = 0; idx < count; ++idx) {
        const Index digit = (idx / repeat) % d;
        offsets[static_cast<std::size_t>(idx)] += digit * stride[f];
      }
      repeat = block;
    }
    return offsets;
  };
  const std::vector<Index> keep_offsets = offsets_for(true, keep_dim);
  const std::vector<Index> trace_offsets = offsets_for(false, trace_dim);

  ComplexMatrix out = ComplexMatrix::Zero(keep_dim, keep_dim);
  for (Index r = 0; r < keep_dim; ++r) {
    for (Index c = 0; c < keep_dim; ++c) {
      Complex sum = 0.0;
      for (Index t = 0; t < trace_dim; ++t) {
        const Index off = trace_offsets[static_cast<std::size_t>(t)];
        sum += m(keep_offsets[static_cast<std::size_t>(r)] + off,
                 keep_offsets[static_cast<std::size_t>(c)] + off);
      }
      out(r, c) = sum;
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, const Partition& p,
                              const std::vector<std::size_t>& keep) {
  return DensityOperator(partial_trace_matrix(rho.matrix(), p, keep));
}

SpectralDecomposition hermitian_eig(const HermitianOperator& h) {
  auto solver = solve_self_adjoint(h.matrix());
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

HermitianOperator op_func(const HermitianOperator& h,
                          const std::function<double(double)>& f) {
  const SpectralDecomposition eig = hermitian_eig(h);
  RealVector mapped(eig.eigenvalues.size());
  for (Index i = 0; i < mapped.size(); ++i) {
    const double value = f(eig.eigenvalues(i));
    if (!std::isfinite(value)) {
      std::ostringstream os;
      os << "op_func: function is undefined at eigenvalue " << eig.eigenvalues(i);
      throw DomainError(os.str());
    }
    mapped(i) = value;
  }
  ComplexMatrix out =
      eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
  // Symmetrize away float asymmetry, which can exceed the absolute
  // per-entry hermiticity tolerance for large function values.
  out = 0.5 * (out + out.adjoint()).eval();
  return HermitianOperator(std::move(out));
}

ComplexMatrix propagator(const HermitianOperator& h, double t) {
  return propagator(hermitian_eig(h), t);
}

ComplexMatrix propagator(const SpectralDecomposition& eig, double t) {
  ComplexVector phases(eig.eigenvalues.size());
  for (Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -eig.eigenvalues(i) * t));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

DensityOperator evolve(const DensityOperator& rho, const ComplexMatrix& u,
                       double unitary_tol) {
  require_square(u, "evolve");
  if (u.rows() != rho.dim()) {
    throw DimensionError("evolve: propagator and state dimensions differ");
  }
  const double defect =
      (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
  if (defect > unitary_tol) {
    std::ostringstream os;
    os << "evolve: operator is not unitary, ||U^dagger U - I||_F = " << defect;
    throw UnitarityError(os.str());
  }
  return DensityOperator(ComplexMatrix(u * rho.matrix() * u.adjoint()));
}

double expectation_value(const ComplexMatrix& h, const ComplexMatrix& rho) {
  if (h.rows() != rho.rows() || h.cols() != rho.cols()) {
    throw DimensionError("expectation_value: dimension mismatch");
  }
  return (h * rho).trace().real();
}

double expectation_value(const HermitianOperator& h, const DensityOperator& rho) {
  return expectation_value(h.matrix(), rho.matrix());
}

}  // namespace qthermo

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

#include "qthermo/entropy.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qthermo {

double von_neumann_entropy(const DensityOperator& rho) {
  double s = 0.0;
  const RealVector& p = rho.eigenvalues();
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) {
      s -= p(i) * std::log(p(i));
    }
  }
  return s < 0.0 ? 0.0 : s;
}

double thermo_entropy(const DensityOperator& rho, double k) {
  if (!(k > 0.0)) {
    throw ParameterError("thermo_entropy: Boltzmann constant must be positive");
  }
  return k * von_neumann_entropy(rho);
}

EntropyValue entropy_value(const DensityOperator& rho, double k) {
  const double nats = von_neumann_entropy(rho);
  return EntropyValue{nats, thermo_entropy(rho, k)};
}

double joint_entropy(const DensityOperator& rho) {
  return von_neumann_entropy(rho);
}

double marginal_entropy(const DensityOperator& rho, const Partition& p) {
  p.require_total(rho.dim());
  double sum = 0.0;
  for (std::size_t factor = 0; factor < p.size(); ++factor) {
    sum += von_neumann_entropy(partial_trace(rho, p, {factor}));
  }
  return sum;
}

double correlation_information(const DensityOperator& rho, const Partition& p) {
  const double value = marginal_entropy(rho, p) - joint_entropy(rho);
  if (value < 0.0 && value >= -kInfoClampTol) {
    return 0.0;
  }
  return value;
}

double relative_entropy(const DensityOperator& sigma, const DensityOperator& rho,
                        double supp_tol) {
  if (sigma.dim() != rho.dim()) {
    throw DimensionError("relative_entropy: state dimensions differ");
  }

  double sigma_term = 0.0;
  for (Index i = 0; i < sigma.eigenvalues().size(); ++i) {
    const double s = sigma.eigenvalues()(i);
    if (s > 0.0) {
      sigma_term += s * std::log(s);
    }
  }

  // Weights of sigma along the eigenvectors of rho.
  const ComplexMatrix& v = rho.eigenvectors();
  const RealVector weights =
      (v.adjoint() * sigma.matrix() * v).diagonal().real();

  double cross_term = 0.0;
  double kernel_weight = 0.0;
  for (Index j = 0; j < rho.eigenvalues().size(); ++j) {
    const double r = rho.eigenvalues()(j);
    if (r <= supp_tol) {
      kernel_weight += weights(j);
    } else {
      cross_term += weights(j) * std::log(r);
    }
  }
  if (kernel_weight > supp_tol) {
    return std::numeric_limits<double>::infinity();
  }

  double d = sigma_term - cross_term;
  if (d < 0.0 && d > -1e-12) {
    d = 0.0;
  }
  return d;
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("trace_distance: state dimensions differ");
  }
  const HermitianOperator diff(ComplexMatrix(a.matrix() - b.matrix()));
  const SpectralDecomposition eig = hermitian_eig(diff);
  return 0.5 * eig.eigenvalues.cwiseAbs().sum();
}

}  // namespace qthermo

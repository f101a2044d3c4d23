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

#include "qthermo/random.hpp"

namespace qthermo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

ComplexMatrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      g(r, c) = Complex(normal(rng), normal(rng));
    }
  }
  return g;
}

}  // namespace

DensityOperator random_density(Index dim, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(rho);
}

HermitianOperator random_hermitian(Index dim, Rng& rng, double scale) {
  const ComplexMatrix g = scale * gaussian_matrix(dim, dim, rng);
  return HermitianOperator(ComplexMatrix(0.5 * (g + g.adjoint())));
}

ComplexMatrix random_unitary(Index dim, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (Index i = 0; i < dim; ++i) {
    const Complex diag = r(i, i);
    const double mag = std::abs(diag);
    q.col(i) *= (mag > 0.0) ? diag / mag : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace qthermo

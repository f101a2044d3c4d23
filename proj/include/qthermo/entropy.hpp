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

#ifndef QTHERMO_ENTROPY_HPP
#define QTHERMO_ENTROPY_HPP

#include "qthermo/operators.hpp"

namespace qthermo {

// Natural-log units everywhere; thermodynamic entropy is k times the
// information entropy of the same state.
struct EntropyValue {
  double nats;
  double boltzmann_scaled;
};

// Round-off window below zero that correlation information reports as zero.
inline constexpr double kInfoClampTol = 1e-9;

// -tr(rho ln rho) with 0 ln 0 := 0; lies in [0, ln dim].
double von_neumann_entropy(const DensityOperator& rho);

// k * von_neumann_entropy. k must be positive.
double thermo_entropy(const DensityOperator& rho, double k);

EntropyValue entropy_value(const DensityOperator& rho, double k);

// Entropy of the total composite state.
double joint_entropy(const DensityOperator& rho);

// Sum of the reduced-state entropies over all factors of the partition.
double marginal_entropy(const DensityOperator& rho, const Partition& p);

// Marginal minus joint entropy: zero iff the state is a product across the
// partition, otherwise positive. Values in [-1e-9, 0) from round-off are
// reported as zero.
double correlation_information(const DensityOperator& rho, const Partition& p);

// D(sigma||rho) = tr sigma (ln sigma - ln rho); +infinity when the support of
// sigma is not contained in the support of rho (eigenvalue threshold supp_tol).
double relative_entropy(const DensityOperator& sigma, const DensityOperator& rho,
                        double supp_tol = kSuppTol);

// Half trace norm of the difference of two states.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

}  // namespace qthermo

#endif  // QTHERMO_ENTROPY_HPP

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

#ifndef QTHERMO_RANDOM_HPP
#define QTHERMO_RANDOM_HPP

#include <cstdint>
#include <random>

#include "qthermo/operators.hpp"

namespace qthermo {

using Rng = std::mt19937_64;

// Stateless mix used to derive independent per-instance seeds, so results do
// not depend on how instances are partitioned across threads.
std::uint64_t splitmix64(std::uint64_t x);

inline Rng instance_rng(std::uint64_t seed, std::uint64_t instance) {
  return Rng(splitmix64(seed + 0x9e3779b97f4a7c15ULL * (instance + 1)));
}

// Full-rank random state G G† / tr(G G†), G with iid complex Gaussian entries.
DensityOperator random_density(Index dim, Rng& rng);

// (A + A†)/2 with iid complex Gaussian entries of the given scale.
HermitianOperator random_hermitian(Index dim, Rng& rng, double scale = 1.0);

// Haar-distributed unitary via phase-fixed QR of a complex Gaussian matrix.
ComplexMatrix random_unitary(Index dim, Rng& rng);

}  // namespace qthermo

#endif  // QTHERMO_RANDOM_HPP

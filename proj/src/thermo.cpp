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

#include "qthermo/thermo.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qthermo {

namespace {

// Gibbs weights for a spectrum, shifted so the largest exponent is zero.
struct GibbsWeights {
  RealVector weights;  // e^{-beta (lambda_i - shift)}
  double shift;        // reference eigenvalue
  double sum;          // shifted partition function
};

GibbsWeights gibbs_weights(const RealVector& spectrum, double beta) {
  const double shift =
      beta >= 0.0 ? spectrum.minCoeff() : spectrum.maxCoeff();
  RealVector w(spectrum.size());
  for (Index i = 0; i < spectrum.size(); ++i) {
    w(i) = std::exp(-beta * (spectrum(i) - shift));
  }
  return GibbsWeights{w, shift, w.sum()};
}

double gibbs_energy(const RealVector& spectrum, double beta) {
  const GibbsWeights gw = gibbs_weights(spectrum, beta);
  return spectrum.dot(gw.weights) / gw.sum;
}

}  // namespace

ThermalReference::ThermalReference(double beta, HermitianOperator hamiltonian,
                                   DensityOperator state,
                                   double log_partition_function, double energy)
    : beta_(beta),
      hamiltonian_(std::move(hamiltonian)),
      state_(std::move(state)),
      log_z_(log_partition_function),
      energy_(energy) {}

double ThermalReference::divergence(double sigma_entropy,
                                    double sigma_energy) const {
  double d = -sigma_entropy + beta_ * sigma_energy + log_z_;
  if (d < 0.0 && d > -1e-12) {
    d = 0.0;
  }
  return d;
}

double ThermalReference::divergence(const DensityOperator& sigma) const {
  return divergence(von_neumann_entropy(sigma),
                    expectation_value(hamiltonian_, sigma));
}

ThermalReference gibbs_state(const HermitianOperator& h, double beta) {
  if (!std::isfinite(beta)) {
    throw ParameterError("gibbs_state: beta must be finite");
  }
  const SpectralDecomposition eig = hermitian_eig(h);
  const GibbsWeights gw = gibbs_weights(eig.eigenvalues, beta);

  RealVector populations = gw.weights / gw.sum;
  ComplexMatrix m =
      eig.eigenvectors * populations.asDiagonal() * eig.eigenvectors.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  DensityOperator state(m);

  const double log_z = std::log(gw.sum) - beta * gw.shift;
  const double energy = eig.eigenvalues.dot(populations);
  return ThermalReference(beta, h, std::move(state), log_z, energy);
}

double match_beta(const RealVector& spectrum, double energy) {
  const double lo_e = spectrum.minCoeff();
  const double hi_e = spectrum.maxCoeff();
  if (!(energy > lo_e && energy < hi_e)) {
    std::ostringstream os;
    os << "match_beta: target energy " << energy
       << " outside the open spectral interval (" << lo_e << ", " << hi_e << ")";
    throw EnergyRangeError(os.str());
  }
  if (energy == spectrum.mean()) {
    return 0.0;
  }

  const double norm = std::max(std::abs(lo_e), std::abs(hi_e));
  const double scale = std::max(std::abs(energy), norm);
  double lo = -50.0 / norm;
  double hi = 50.0 / norm;
  // The Gibbs energy decreases in beta; widen the bracket until it straddles
  // the target.
  int guard = 0;
  while (gibbs_energy(spectrum, hi) > energy) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 1000) {
      throw NumericError("match_beta: failed to bracket the target energy");
    }
  }
  while (gibbs_energy(spectrum, lo) < energy) {
    hi = lo;
    lo *= 2.0;
    if (++guard > 1000) {
      throw NumericError("match_beta: failed to bracket the target energy");
    }
  }

  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double e = gibbs_energy(spectrum, mid);
    if (std::abs(e - energy) <= 1e-13 * scale) {
      break;
    }
    if (e > energy) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

double match_beta(const HermitianOperator& h, double energy) {
  return match_beta(hermitian_eig(h).eigenvalues, energy);
}

ThermalReference matched_thermal_reference(const HermitianOperator& h,
                                           double energy) {
  return gibbs_state(h, match_beta(h, energy));
}

double heat(const HermitianOperator& h_b, const DensityOperator& rho_b_before,
            const DensityOperator& rho_b_after) {
  if (rho_b_before.dim() != rho_b_after.dim() ||
      h_b.dim() != rho_b_before.dim()) {
    throw DimensionError("heat: dimension mismatch");
  }
  return expectation_value(h_b, rho_b_after) -
         expectation_value(h_b, rho_b_before);
}

double free_energy(const DensityOperator& rho, const HermitianOperator& h,
                   double beta) {
  if (beta == 0.0) {
    throw ParameterError(
        "free_energy: undefined at infinite temperature (beta = 0)");
  }
  if (rho.dim() != h.dim()) {
    throw DimensionError("free_energy: dimension mismatch");
  }
  return expectation_value(h, rho) - von_neumann_entropy(rho) / beta;
}

WorkLedger work_ledger(const HermitianOperator& h_s,
                       const HermitianOperator& h_s_after,
                       const HermitianOperator& h_b,
                       const HermitianOperator& h_int,
                       const HermitianOperator& h_int_after,
                       const DensityOperator& rho_sb,
                       const DensityOperator& rho_sb_after, const Partition& p) {
  if (p.size() != 2) {
    throw DimensionError("work_ledger: partition must be bipartite");
  }
  p.require_total(rho_sb.dim());
  p.require_total(rho_sb_after.dim());
  if (h_s.dim() != p.dim(0) || h_s_after.dim() != p.dim(0) ||
      h_b.dim() != p.dim(1) || h_int.dim() != rho_sb.dim() ||
      h_int_after.dim() != rho_sb.dim()) {
    throw DimensionError("work_ledger: Hamiltonian dimensions do not match the partition");
  }

  const DensityOperator rho_s = partial_trace(rho_sb, p, {0});
  const DensityOperator rho_s_after = partial_trace(rho_sb_after, p, {0});
  const DensityOperator rho_b = partial_trace(rho_sb, p, {1});
  const DensityOperator rho_b_after = partial_trace(rho_sb_after, p, {1});

  WorkLedger ledger;
  ledger.system_term = expectation_value(h_s_after, rho_s_after) -
                       expectation_value(h_s, rho_s);
  ledger.heat = heat(h_b, rho_b, rho_b_after);
  ledger.interaction_term = expectation_value(h_int_after, rho_sb_after) -
                            expectation_value(h_int, rho_sb);

  const ComplexMatrix id_s = identity_matrix(p.dim(0));
  const ComplexMatrix id_b = identity_matrix(p.dim(1));
  const ComplexMatrix h_total_before =
      kron(h_s.matrix(), id_b) + kron(id_s, h_b.matrix()) + h_int.matrix();
  const ComplexMatrix h_total_after = kron(h_s_after.matrix(), id_b) +
                                      kron(id_s, h_b.matrix()) +
                                      h_int_after.matrix();
  ledger.total_work = expectation_value(h_total_after, rho_sb_after.matrix()) -
                      expectation_value(h_total_before, rho_sb.matrix());
  return ledger;
}

double delta_d(const DensityOperator& rho_b_before,
               const DensityOperator& rho_b_after,
               const ThermalReference& thermal) {
  const double d_before = relative_entropy(rho_b_before, thermal.state());
  const double d_after = relative_entropy(rho_b_after, thermal.state());
  if (std::isinf(d_before) || std::isinf(d_after)) {
    return std::numeric_limits<double>::infinity();
  }
  return d_after - d_before;
}

}  // namespace qthermo

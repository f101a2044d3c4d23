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

#ifndef QTHERMO_THERMO_HPP
#define QTHERMO_THERMO_HPP

#include "qthermo/entropy.hpp"
#include "qthermo/operators.hpp"

namespace qthermo {

inline constexpr double kEnergyTol = 1e-9;  // relative, ThermalReference invariant

// Gibbs state e^{-beta H}/Z together with the data needed to use it as the
// reference of the relative-entropy ledger.
class ThermalReference {
 public:
  ThermalReference(double beta, HermitianOperator hamiltonian,
                   DensityOperator state, double log_partition_function,
                   double energy);

  double beta() const { return beta_; }
  const HermitianOperator& hamiltonian() const { return hamiltonian_; }
  const DensityOperator& state() const { return state_; }
  // Z = tr e^{-beta H}; may overflow to +inf for extreme spectra, in which
  // case log_partition_function() remains exact.
  double partition_function() const { return std::exp(log_z_); }
  double log_partition_function() const { return log_z_; }
  // Mean energy tr[state H], the energy this reference was matched to.
  double energy() const { return energy_; }
  // Set when the matched temperature is negative (population inversion);
  // possible for bounded spectra when the target exceeds the midpoint mean.
  bool negative_beta() const { return beta_ < 0.0; }

  // D(sigma || state) through ln(state) = -beta H - ln Z, which is exact for
  // any Gibbs reference. Accepts sigma's entropy and mean energy so that a
  // state living on a smaller certified subspace can be compared without
  // embedding.
  double divergence(double sigma_entropy, double sigma_energy) const;
  double divergence(const DensityOperator& sigma) const;

 private:
  double beta_;
  HermitianOperator hamiltonian_;
  DensityOperator state_;
  double log_z_;
  double energy_;
};

// e^{-beta H}/Z built from the spectrum, shifted before exponentiation so the
// construction cannot overflow. beta must be finite; negative beta is allowed
// for bounded spectra.
ThermalReference gibbs_state(const HermitianOperator& h, double beta);

// Inverse temperature such that the Gibbs mean energy equals `energy`.
// The Gibbs energy is strictly decreasing in beta, so a bracketed bisection
// is unconditionally safe. Throws EnergyRangeError unless energy lies in the
// open interval (lambda_min, lambda_max); returns exactly 0 when energy
// equals the infinite-temperature mean.
double match_beta(const HermitianOperator& h, double energy);
double match_beta(const RealVector& spectrum, double energy);

// Convenience: Gibbs reference with beta matched to the given mean energy.
ThermalReference matched_thermal_reference(const HermitianOperator& h,
                                           double energy);

// Heat absorbed by the bath: tr[H_B (rho_after - rho_before)].
double heat(const HermitianOperator& h_b, const DensityOperator& rho_b_before,
            const DensityOperator& rho_b_after);

// Non-equilibrium free energy tr[rho H] - S(rho)/beta (k = 1 units).
double free_energy(const DensityOperator& rho, const HermitianOperator& h,
                   double beta);

// Work split per the first law: total = system + heat + interaction.
// total_work is evaluated independently from the endpoint total Hamiltonians,
// so the first-law identity is a genuine cross-check rather than a tautology.
struct WorkLedger {
  double total_work = 0.0;
  double system_term = 0.0;
  double heat = 0.0;
  double interaction_term = 0.0;
};

WorkLedger work_ledger(const HermitianOperator& h_s,
                       const HermitianOperator& h_s_after,
                       const HermitianOperator& h_b,
                       const HermitianOperator& h_int,
                       const HermitianOperator& h_int_after,
                       const DensityOperator& rho_sb,
                       const DensityOperator& rho_sb_after, const Partition& p);

// D(rho_after||rho_th) - D(rho_before||rho_th). Returns +infinity if either
// relative entropy is infinite. May be negative for non-equilibrium baths.
double delta_d(const DensityOperator& rho_b_before,
               const DensityOperator& rho_b_after,
               const ThermalReference& thermal);

}  // namespace qthermo

#endif  // QTHERMO_THERMO_HPP

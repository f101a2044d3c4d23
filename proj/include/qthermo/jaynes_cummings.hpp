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

#ifndef QTHERMO_JAYNES_CUMMINGS_HPP
#define QTHERMO_JAYNES_CUMMINGS_HPP

#include "qthermo/laws.hpp"
#include "qthermo/operators.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo {

// Resonant/detuned qubit-oscillator model with a correlated initial state
// xi|0,n> + zeta|1,n-1>. Joint space ordering: qubit factor first, Fock
// factor second, |mu,m> -> mu*d_fock + m.
struct JCParams {
  double omega0 = 1.0;  // qubit frequency
  double omega = 0.5;   // field frequency
  double g = 1.0;       // coupling
  int n = 7;            // Fock label of the correlated initial state
  Complex xi = 0.5;     // amplitude of |0,n>; zeta = sqrt(1 - |xi|^2) real
  Index d_fock = 0;     // Fock truncation; 0 means the default n + 30
  double t_max = 30.0;
  int steps = 2000;

  Index fock_dim() const { return d_fock > 0 ? d_fock : n + 30; }
  Index joint_dim() const { return 2 * fock_dim(); }
  double zeta() const;
  double detuning() const { return omega0 - omega; }
  Partition partition() const { return Partition({2, fock_dim()}); }

  void validate() const;  // throws ParameterError
};

struct JCOperators {
  HermitianOperator h_s;      // omega0 sigma+ sigma-
  HermitianOperator h_b;      // omega b†b
  HermitianOperator h_int;    // g (sigma+ x b + sigma- x b†)
  HermitianOperator h_total;  // h_s x I + I x h_b + h_int
};

JCOperators build_hamiltonians(const JCParams& p);

// Rank-one projector of xi|0,n> + zeta|1,n-1>.
DensityOperator initial_state(const JCParams& p);

// Detuned Rabi coefficients of the closed-form propagator, evaluated at Fock
// label m: Omega(m) = sqrt(Delta^2 + 4 g^2 m),
//   c(m,t) = e^{i Delta t/2} [cos(Omega t/2) - i (Delta/Omega) sin(Omega t/2)]
//   d(m,t) = -i e^{i Delta t/2} (2g/Omega) sin(Omega t/2)
Complex jc_coefficient_c(const JCParams& p, Index m, double t);
Complex jc_coefficient_d(const JCParams& p, Index m, double t);
double jc_rabi_frequency(const JCParams& p, double m);

// Interaction-picture propagator assembled block-wise from the closed-form
// coefficients. Unitary away from the truncation edge.
ComplexMatrix analytic_propagator(const JCParams& p, double t);

// The same interaction-picture propagator built by brute force:
// e^{i Delta t sigma+sigma-} e^{-i t (Delta sigma+sigma- + H_int)} via
// spectral matrix exponentials. Ground truth for the closed form.
ComplexMatrix oracle_propagator(const JCParams& p, double t);

struct ReducedStates {
  DensityOperator rho_s;
  DensityOperator rho_b;
};

// Reduced states transcribed verbatim from the closed-form 2x2 / 4x4
// expressions (bath block at Fock levels n-2 .. n+1). Kept as published for
// comparison against the oracle; the oracle is authoritative for figures.
ReducedStates analytic_reduced_states(const JCParams& p, double t);

// Reduced states from direct numerical evolution of the initial state on the
// truncated joint space. Throws TruncationError if the top Fock level
// acquires population beyond 1e-12.
ReducedStates oracle_reduced_states(const JCParams& p, double t);

// Closed-form oscillator inverse temperature beta = ln(1 + omega/E)/omega
// for mean energy E > 0.
double closed_form_beta(double omega, double energy);

// Gibbs reference of the oscillator bath at the energy of rho_b, with beta
// from the closed form. The reference is built on an enlarged Fock space
// certified by e^{-beta omega d} < 1e-12 relative to Z (the shipped threshold
// is 1e-14 for margin) and cross-validated against match_beta within 1e-6.
ThermalReference bath_thermal_reference(const JCParams& p,
                                        const DensityOperator& rho_b);

// Certified Fock dimension used by bath_thermal_reference.
Index certified_fock_dim(double beta, double omega, Index at_least);

// Full ledger trajectory on the configured grid (Schroedinger-picture
// evolution by the time-independent total Hamiltonian; every recorded
// quantity is invariant between this and the interaction picture).
Trajectory simulate(const JCParams& p, const TrajectoryObserver& observer = {});

}  // namespace qthermo

#endif  // QTHERMO_JAYNES_CUMMINGS_HPP

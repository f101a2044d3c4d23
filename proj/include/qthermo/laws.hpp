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

#ifndef QTHERMO_LAWS_HPP
#define QTHERMO_LAWS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qthermo/thermo.hpp"

namespace qthermo {

// Sign conventions of the residuals (all "left minus right" of the defining
// equalities, k = 1 units unless stated):
//   entropy increase:  k*[dS_ME - dI],                    forward differences
//   landauer:          beta*dQ - (dS + dI + dD),          dS is the system
//                      entropy DECREASE S(rho_S) - S(rho'_S); dI, dD, dQ forward
//   second law:        (W - dF - dE_int) - (dI + dD)/beta
inline constexpr double kJointEntropyDriftTol = 1e-6;

// k*[dS_ME - dI] between two states connected by a joint unitary. Throws
// NonUnitaryTrajectoryError when the joint entropies differ beyond tolerance.
double entropy_increase_residual(const DensityOperator& rho_before,
                                 const DensityOperator& rho_after,
                                 const Partition& p, double k);

// beta*dQ - (dS + dI + dD) for a bipartite system-bath pair under a joint
// unitary, with the thermal reference matched to the initial bath energy.
double landauer_residual(const DensityOperator& rho_sb_before,
                         const DensityOperator& rho_sb_after,
                         const Partition& split, const HermitianOperator& h_b,
                         const ThermalReference& thermal);

// One endpoint of a driven process: joint state plus the system and
// interaction Hamiltonians in force at that instant.
struct DrivenSnapshot {
  DensityOperator rho_sb;
  HermitianOperator h_s;
  HermitianOperator h_int;
};

// (W - dF - dE_int) - (dI + dD)/beta between two driven endpoints.
double second_law_residual(const DrivenSnapshot& before,
                           const DrivenSnapshot& after, const Partition& split,
                           const HermitianOperator& h_b,
                           const ThermalReference& thermal);

// The three premises whose joint imposition recovers the traditional
// inequalities.
struct ConditionReport {
  bool product = false;
  bool thermal_equilibrium = false;
  bool weak_coupling = false;
};

ConditionReport condition_report(const DensityOperator& rho_sb,
                                 const Partition& split,
                                 const HermitianOperator& h_int,
                                 const ThermalReference& thermal,
                                 double weak_tol = 1e-9);

// One time-point of the ledger. Q and W are cumulative from t = 0; heat_flux
// is the exact instantaneous dQ/dt = tr[(I x H_B)(-i)[H, rho]].
struct ThermoRecord {
  double t = 0.0;
  double S_system = 0.0;
  double S_bath = 0.0;
  double S_joint = 0.0;
  double I = 0.0;
  double D_bath = 0.0;
  double Q = 0.0;
  WorkLedger W;
  double F_system = 0.0;
  double heat_flux = 0.0;
  double residual_landauer = 0.0;
  double residual_second_law = 0.0;
  double residual_entropy_increase = 0.0;
  ConditionReport conditions;
};

struct Trajectory {
  std::vector<ThermoRecord> records;
  std::string config_hash;
  double beta = 0.0;  // thermal-reference inverse temperature
  double k = 1.0;
};

// Constant system/interaction Hamiltonians over one time interval.
struct DrivingLeg {
  HermitianOperator h_s;
  HermitianOperator h_int;
  double duration = 0.0;
  int steps = 1;
};

// Called once per emitted record with the joint and reduced states.
using TrajectoryObserver =
    std::function<void(double t, const DensityOperator& rho_sb,
                       const DensityOperator& rho_s, const DensityOperator& rho_b)>;

// Unitary piecewise-constant evolution of rho0 under
// H(t) = h_s(t) x I + I x h_b + h_int(t), with all ledger quantities per
// record. The thermal reference is matched to the initial bath energy unless
// an override is supplied; it is never re-matched (one reference per
// trajectory). Work accumulates as quench work at leg switches; within a leg
// the total energy is conserved.
Trajectory generate_trajectory(const DensityOperator& rho0,
                               const Partition& split,
                               const HermitianOperator& h_b,
                               const std::vector<DrivingLeg>& legs, double k = 1.0,
                               const std::optional<ThermalReference>& thermal_override =
                                   std::nullopt,
                               std::string config_hash = {},
                               const TrajectoryObserver& observer = {});

// Fluxes of the Landauer ledger. dq_beta is beta times the exact
// instantaneous heat flux; ds (entropy-decrease rate), di and dd are central
// finite differences, with second-order one-sided stencils at the endpoints.
// The per-record identity dq_beta = ds + di + dd then carries the O(h^2)
// discretization error of the differences.
struct FluxRecord {
  double t = 0.0;
  double dq_beta = 0.0;
  double ds = 0.0;
  double di = 0.0;
  double dd = 0.0;
};

// Requires at least 3 records on a uniform grid.
std::vector<FluxRecord> flux_series(const Trajectory& traj);

struct Proposition1Result {
  bool holds = false;
  double min_information = 0.0;
};

// True iff the correlation information stays >= -1e-9 across all records.
Proposition1Result proposition1_check(const Trajectory& traj);

}  // namespace qthermo

#endif  // QTHERMO_LAWS_HPP

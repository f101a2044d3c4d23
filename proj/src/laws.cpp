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

#include "qthermo/laws.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace qthermo {

namespace {

double clamp_information(double value) {
  if (value < 0.0 && value >= -kInfoClampTol) {
    return 0.0;
  }
  return value;
}

}  // namespace

double entropy_increase_residual(const DensityOperator& rho_before,
                                 const DensityOperator& rho_after,
                                 const Partition& p, double k) {
  if (!(k > 0.0)) {
    throw ParameterError("entropy_increase_residual: k must be positive");
  }
  p.require_total(rho_before.dim());
  p.require_total(rho_after.dim());

  const double joint_before = joint_entropy(rho_before);
  const double joint_after = joint_entropy(rho_after);
  if (std::abs(joint_after - joint_before) > kJointEntropyDriftTol) {
    std::ostringstream os;
    os << "entropy_increase_residual: joint entropy drift "
       << (joint_after - joint_before) << " exceeds " << kJointEntropyDriftTol
       << "; the endpoints are not connected by a joint unitary";
    throw NonUnitaryTrajectoryError(os.str());
  }

  const double d_marginal =
      marginal_entropy(rho_after, p) - marginal_entropy(rho_before, p);
  const double d_information = correlation_information(rho_after, p) -
                               correlation_information(rho_before, p);
  return k * (d_marginal - d_information);
}

double landauer_residual(const DensityOperator& rho_sb_before,
                         const DensityOperator& rho_sb_after,
                         const Partition& split, const HermitianOperator& h_b,
                         const ThermalReference& thermal) {
  if (split.size() != 2) {
    throw DimensionError("landauer_residual: partition must be bipartite");
  }
  split.require_total(rho_sb_before.dim());
  split.require_total(rho_sb_after.dim());
  if (h_b.dim() != split.dim(1)) {
    throw DimensionError("landauer_residual: bath Hamiltonian dimension mismatch");
  }

  const DensityOperator rho_s = partial_trace(rho_sb_before, split, {0});
  const DensityOperator rho_s_after = partial_trace(rho_sb_after, split, {0});
  const DensityOperator rho_b = partial_trace(rho_sb_before, split, {1});
  const DensityOperator rho_b_after = partial_trace(rho_sb_after, split, {1});

  const double d_q = heat(h_b, rho_b, rho_b_after);
  const double d_s_decrease =
      von_neumann_entropy(rho_s) - von_neumann_entropy(rho_s_after);
  const double d_i = correlation_information(rho_sb_after, split) -
                     correlation_information(rho_sb_before, split);
  const double d_d =
      thermal.divergence(von_neumann_entropy(rho_b_after),
                         expectation_value(h_b, rho_b_after)) -
      thermal.divergence(von_neumann_entropy(rho_b),
                         expectation_value(h_b, rho_b));
  return thermal.beta() * d_q - (d_s_decrease + d_i + d_d);
}

double second_law_residual(const DrivenSnapshot& before,
                           const DrivenSnapshot& after, const Partition& split,
                           const HermitianOperator& h_b,
                           const ThermalReference& thermal) {
  if (split.size() != 2) {
    throw DimensionError("second_law_residual: partition must be bipartite");
  }
  const double beta = thermal.beta();
  if (beta == 0.0) {
    throw ParameterError("second_law_residual: undefined at beta = 0");
  }

  const WorkLedger ledger =
      work_ledger(before.h_s, after.h_s, h_b, before.h_int, after.h_int,
                  before.rho_sb, after.rho_sb, split);

  const DensityOperator rho_s = partial_trace(before.rho_sb, split, {0});
  const DensityOperator rho_s_after = partial_trace(after.rho_sb, split, {0});
  const double d_f = free_energy(rho_s_after, after.h_s, beta) -
                     free_energy(rho_s, before.h_s, beta);

  const DensityOperator rho_b = partial_trace(before.rho_sb, split, {1});
  const DensityOperator rho_b_after = partial_trace(after.rho_sb, split, {1});
  const double d_i = correlation_information(after.rho_sb, split) -
                     correlation_information(before.rho_sb, split);
  const double d_d =
      thermal.divergence(von_neumann_entropy(rho_b_after),
                         expectation_value(h_b, rho_b_after)) -
      thermal.divergence(von_neumann_entropy(rho_b),
                         expectation_value(h_b, rho_b));

  return (ledger.total_work - d_f - ledger.interaction_term) -
         (d_i + d_d) / beta;
}

ConditionReport condition_report(const DensityOperator& rho_sb,
                                 const Partition& split,
                                 const HermitianOperator& h_int,
                                 const ThermalReference& thermal,
                                 double weak_tol) {
  if (split.size() != 2) {
    throw DimensionError("condition_report: partition must be bipartite");
  }
  split.require_total(rho_sb.dim());

  ConditionReport report;
  report.product = correlation_information(rho_sb, split) < 1e-9;

  const DensityOperator rho_b = partial_trace(rho_sb, split, {1});
  const double bath_energy =
      (thermal.hamiltonian().dim() == rho_b.dim())
          ? expectation_value(thermal.hamiltonian(), rho_b)
          : thermal.hamiltonian()
                .matrix()
                .topLeftCorner(rho_b.dim(), rho_b.dim())
                .cwiseProduct(rho_b.matrix().transpose())
                .sum()
                .real();
  report.thermal_equilibrium =
      thermal.divergence(von_neumann_entropy(rho_b), bath_energy) < 1e-9;

  const double int_norm = h_int.matrix().norm();
  // Zero coupling counts as weak: the literal bound is vacuous at norm 0.
  report.weak_coupling =
      int_norm == 0.0 ||
      std::abs(expectation_value(h_int, rho_sb)) < weak_tol * int_norm;
  return report;
}

Trajectory generate_trajectory(const DensityOperator& rho0,
                               const Partition& split,
                               const HermitianOperator& h_b,
                               const std::vector<DrivingLeg>& legs, double k,
                               const std::optional<ThermalReference>& thermal_override,
                               std::string config_hash,
                               const TrajectoryObserver& observer) {
  if (split.size() != 2) {
    throw DimensionError("generate_trajectory: partition must be bipartite");
  }
  split.require_total(rho0.dim());
  if (h_b.dim() != split.dim(1)) {
    throw DimensionError("generate_trajectory: bath Hamiltonian dimension mismatch");
  }
  if (legs.empty()) {
    throw ParameterError("generate_trajectory: at least one driving leg is required");
  }
  for (const DrivingLeg& leg : legs) {
    if (!(leg.duration > 0.0) || leg.steps < 1) {
      throw ParameterError("generate_trajectory: legs need positive duration and steps");
    }
    if (leg.h_s.dim() != split.dim(0) || leg.h_int.dim() != rho0.dim()) {
      throw DimensionError("generate_trajectory: leg Hamiltonian dimension mismatch");
    }
  }

  const ComplexMatrix id_s = identity_matrix(split.dim(0));
  const ComplexMatrix id_b = identity_matrix(split.dim(1));
  const ComplexMatrix h_b_lifted = kron(id_s, h_b.matrix());

  auto total_hamiltonian = [&](const DrivingLeg& leg) {
    return ComplexMatrix(kron(leg.h_s.matrix(), id_b) + h_b_lifted +
                         leg.h_int.matrix());
  };

  const DensityOperator rho_b0 = partial_trace(rho0, split, {1});
  const double bath_energy0 = expectation_value(h_b, rho_b0);
  const ThermalReference thermal =
      thermal_override ? *thermal_override
                       : matched_thermal_reference(h_b, bath_energy0);
  const double beta = thermal.beta();

  Trajectory traj;
  traj.config_hash = std::move(config_hash);
  traj.beta = beta;
  traj.k = k;

  std::size_t total_records = 1;
  for (const DrivingLeg& leg : legs) {
    total_records += static_cast<std::size_t>(leg.steps);
  }
  traj.records.reserve(total_records);

  // Baselines taken at t = 0 with the first leg's Hamiltonians.
  const DensityOperator rho_s0 = partial_trace(rho0, split, {0});
  const double s_system0 = von_neumann_entropy(rho_s0);
  const double s_bath0 = von_neumann_entropy(rho_b0);
  const double s_joint0 = joint_entropy(rho0);
  const double i0 = clamp_information(s_system0 + s_bath0 - s_joint0);
  const double d0 = thermal.divergence(s_bath0, bath_energy0);
  const double e_sys0 = expectation_value(legs.front().h_s, rho_s0);
  const double e_int0 = expectation_value(legs.front().h_int.matrix(), rho0.matrix());

  double accumulated_quench_work = 0.0;

  auto emit = [&](double t, const DensityOperator& rho, const DrivingLeg& leg,
                  const ComplexMatrix& h_total) {
    const DensityOperator rho_s = partial_trace(rho, split, {0});
    const DensityOperator rho_b = partial_trace(rho, split, {1});

    ThermoRecord rec;
    rec.t = t;
    rec.S_system = von_neumann_entropy(rho_s);
    rec.S_bath = von_neumann_entropy(rho_b);
    rec.S_joint = joint_entropy(rho);
    rec.I = clamp_information(rec.S_system + rec.S_bath - rec.S_joint);

    const double bath_energy = expectation_value(h_b, rho_b);
    rec.D_bath = thermal.divergence(rec.S_bath, bath_energy);
    rec.Q = bath_energy - bath_energy0;

    rec.W.system_term = expectation_value(leg.h_s, rho_s) - e_sys0;
    rec.W.heat = rec.Q;
    rec.W.interaction_term =
        expectation_value(leg.h_int.matrix(), rho.matrix()) - e_int0;
    rec.W.total_work = accumulated_quench_work;

    rec.F_system = (beta != 0.0)
                       ? free_energy(rho_s, leg.h_s, beta)
                       : std::numeric_limits<double>::quiet_NaN();

    // Exact instantaneous heat flux tr[(I x H_B)(-i)[H, rho]].
    const ComplexMatrix commutator =
        h_total * rho.matrix() - rho.matrix() * h_total;
    rec.heat_flux = (Complex(0.0, -1.0) * (h_b_lifted * commutator).trace()).real();

    const double d_s_decrease = s_system0 - rec.S_system;
    const double d_i = rec.I - i0;
    const double d_d = rec.D_bath - d0;
    rec.residual_landauer = beta * rec.Q - (d_s_decrease + d_i + d_d);

    if (beta != 0.0) {
      const double f0 = e_sys0 - s_system0 / beta;
      const double d_f = rec.F_system - f0;
      rec.residual_second_law =
          (rec.W.total_work - d_f - rec.W.interaction_term) - (d_i + d_d) / beta;
    } else {
      rec.residual_second_law = std::numeric_limits<double>::quiet_NaN();
    }

    const double d_marginal =
        (rec.S_system + rec.S_bath) - (s_system0 + s_bath0);
    rec.residual_entropy_increase = k * (d_marginal - d_i);

    rec.conditions = condition_report(rho, split, leg.h_int, thermal);

    if (observer) {
      observer(t, rho, rho_s, rho_b);
    }
    traj.records.push_back(rec);
  };

  DensityOperator rho_leg_start = rho0;
  double t_leg_start = 0.0;
  emit(0.0, rho0, legs.front(), total_hamiltonian(legs.front()));

  for (std::size_t li = 0; li < legs.size(); ++li) {
    const DrivingLeg& leg = legs[li];
    const ComplexMatrix h_total = total_hamiltonian(leg);
    const SpectralDecomposition eig = hermitian_eig(HermitianOperator(h_total));

    const double dt = leg.duration / leg.steps;
    DensityOperator rho_current = rho_leg_start;
    for (int step = 1; step <= leg.steps; ++step) {
      const double t_local = dt * step;
      rho_current = evolve(rho_leg_start, propagator(eig, t_local));
      emit(t_leg_start + t_local, rho_current, leg, h_total);
    }

    rho_leg_start = rho_current;
    t_leg_start += leg.duration;
    if (li + 1 < legs.size()) {
      const ComplexMatrix h_next = total_hamiltonian(legs[li + 1]);
      accumulated_quench_work +=
          expectation_value(ComplexMatrix(h_next - h_total),
                            rho_leg_start.matrix());
    }
  }
  return traj;
}

std::vector<FluxRecord> flux_series(const Trajectory& traj) {
  const std::size_t n = traj.records.size();
  if (n < 3) {
    throw InsufficientDataError("flux_series: at least 3 records are required");
  }
  const double h = traj.records[1].t - traj.records[0].t;
  if (!(h > 0.0)) {
    throw ParameterError("flux_series: records must be strictly time-ordered");
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double step = traj.records[i].t - traj.records[i - 1].t;
    if (std::abs(step - h) > 1e-9 * std::max(1.0, h)) {
      throw ParameterError("flux_series: the time grid must be uniform");
    }
  }

  auto value = [&](std::size_t i, auto getter) {
    return getter(traj.records[i]);
  };
  auto derivative = [&](std::size_t i, auto getter) {
    if (i == 0) {
      return (-3.0 * value(0, getter) + 4.0 * value(1, getter) -
              value(2, getter)) /
             (2.0 * h);
    }
    if (i == n - 1) {
      return (3.0 * value(n - 1, getter) - 4.0 * value(n - 2, getter) +
              value(n - 3, getter)) /
             (2.0 * h);
    }
    return (value(i + 1, getter) - value(i - 1, getter)) / (2.0 * h);
  };

  auto s_decrease = [&](const ThermoRecord& r) {
    return traj.records.front().S_system - r.S_system;
  };
  auto information = [](const ThermoRecord& r) { return r.I; };
  auto divergence = [](const ThermoRecord& r) { return r.D_bath; };

  std::vector<FluxRecord> fluxes;
  fluxes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    FluxRecord f;
    f.t = traj.records[i].t;
    f.dq_beta = traj.beta * traj.records[i].heat_flux;
    f.ds = derivative(i, s_decrease);
    f.di = derivative(i, information);
    f.dd = derivative(i, divergence);
    fluxes.push_back(f);
  }
  return fluxes;
}

Proposition1Result proposition1_check(const Trajectory& traj) {
  Proposition1Result result;
  if (traj.records.empty()) {
    throw InsufficientDataError("proposition1_check: empty trajectory");
  }
  result.min_information = std::numeric_limits<double>::infinity();
  for (const ThermoRecord& rec : traj.records) {
    result.min_information = std::min(result.min_information, rec.I);
  }
  result.holds = result.min_information >= -1e-9;
  return result;
}

}  // namespace qthermo

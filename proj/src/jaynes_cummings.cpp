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

#include "qthermo/jaynes_cummings.hpp"

#include <cmath>
#include <sstream>

namespace qthermo {

namespace {

constexpr double kTruncationPopulationTol = 1e-12;
constexpr double kThermalTailThreshold = 1e-14;  // spec requires < 1e-12
constexpr Index kMaxCertifiedFockDim = 1 << 16;

void check_state_truncation(const DensityOperator& rho_b, double t) {
  const Index top = rho_b.dim() - 1;
  for (Index level : {top, top - 1}) {
    const double population = rho_b.matrix()(level, level).real();
    if (population > kTruncationPopulationTol) {
      std::ostringstream os;
      os << "Fock level " << level << " holds population " << population
         << " > " << kTruncationPopulationTol << " at t = " << t
         << "; increase d_fock";
      throw TruncationError(os.str());
    }
  }
}

}  // namespace

double JCParams::zeta() const {
  const double z2 = 1.0 - std::norm(xi);
  return z2 > 0.0 ? std::sqrt(z2) : 0.0;
}

void JCParams::validate() const {
  if (n < 2) {
    throw ParameterError("JCParams: n must be at least 2");
  }
  if (std::norm(xi) > 1.0 + 1e-12) {
    throw ParameterError("JCParams: |xi| must not exceed 1");
  }
  if (fock_dim() < n + 2) {
    throw ParameterError("JCParams: d_fock must be at least n + 2");
  }
  if (!(omega > 0.0)) {
    throw ParameterError("JCParams: omega must be positive");
  }
  if (!(t_max > 0.0) || steps < 2) {
    throw ParameterError("JCParams: need t_max > 0 and steps >= 2");
  }
}

JCOperators build_hamiltonians(const JCParams& p) {
  p.validate();
  const Index d = p.fock_dim();
  const ComplexMatrix b = annihilation_operator(d);
  const ComplexMatrix number = b.adjoint() * b;

  ComplexMatrix excited = ComplexMatrix::Zero(2, 2);
  excited(1, 1) = 1.0;  // sigma+ sigma-

  ComplexMatrix h_s = p.omega0 * excited;
  ComplexMatrix h_b = p.omega * number;
  ComplexMatrix h_int =
      p.g * (kron(sigma_plus(), b) + kron(sigma_minus(), ComplexMatrix(b.adjoint())));
  ComplexMatrix h_total = kron(h_s, identity_matrix(d)) +
                          kron(identity_matrix(2), h_b) + h_int;
  return JCOperators{HermitianOperator(std::move(h_s)),
                     HermitianOperator(std::move(h_b)),
                     HermitianOperator(std::move(h_int)),
                     HermitianOperator(std::move(h_total))};
}

DensityOperator initial_state(const JCParams& p) {
  p.validate();
  const Index d = p.fock_dim();
  ComplexVector psi = ComplexVector::Zero(2 * d);
  psi(p.n) = p.xi;                   // |0, n>
  psi(d + p.n - 1) = p.zeta();       // |1, n-1>
  return DensityOperator::pure(psi);
}

double jc_rabi_frequency(const JCParams& p, double m) {
  const double delta = p.detuning();
  return std::sqrt(delta * delta + 4.0 * p.g * p.g * m);
}

Complex jc_coefficient_c(const JCParams& p, Index m, double t) {
  const double delta = p.detuning();
  const Complex phase = std::exp(Complex(0.0, 0.5 * delta * t));
  const double omega_m = jc_rabi_frequency(p, static_cast<double>(m));
  if (omega_m == 0.0) {
    return phase;  // m = 0 on resonance
  }
  return phase * Complex(std::cos(0.5 * omega_m * t),
                         -(delta / omega_m) * std::sin(0.5 * omega_m * t));
}

Complex jc_coefficient_d(const JCParams& p, Index m, double t) {
  const double delta = p.detuning();
  const Complex phase = std::exp(Complex(0.0, 0.5 * delta * t));
  const double omega_m = jc_rabi_frequency(p, static_cast<double>(m));
  if (omega_m == 0.0) {
    // Small-Omega limit of (2g/Omega) sin(Omega t/2).
    return Complex(0.0, -1.0) * phase * (p.g * t);
  }
  return Complex(0.0, -1.0) * phase * (2.0 * p.g / omega_m) *
         std::sin(0.5 * omega_m * t);
}

ComplexMatrix analytic_propagator(const JCParams& p, double t) {
  p.validate();
  const Index d = p.fock_dim();
  ComplexMatrix u = ComplexMatrix::Zero(2 * d, 2 * d);

  // Ground block <0,m|U|0,m> = c*(m,t).
  for (Index m = 0; m < d; ++m) {
    u(m, m) = std::conj(jc_coefficient_c(p, m, t));
  }
  // Excited block <1,m|U|1,m> = c(m+1,t).
  for (Index m = 0; m < d; ++m) {
    u(d + m, d + m) = jc_coefficient_c(p, m + 1, t);
  }
  // <1,m-1|U|0,m> = sqrt(m) d(m,t)  (block d(n+1,t) b).
  for (Index m = 1; m < d; ++m) {
    u(d + m - 1, m) = std::sqrt(static_cast<double>(m)) * jc_coefficient_d(p, m, t);
  }
  // <0,m+1|U|1,m> = -sqrt(m+1) d*(m+1,t)  (block -b† d†(n+1,t)).
  for (Index m = 0; m + 1 < d; ++m) {
    u(m + 1, d + m) = -std::sqrt(static_cast<double>(m + 1)) *
                      std::conj(jc_coefficient_d(p, m + 1, t));
  }
  return u;
}

ComplexMatrix oracle_propagator(const JCParams& p, double t) {
  p.validate();
  const Index d = p.fock_dim();
  const JCOperators ops = build_hamiltonians(p);
  const double delta = p.detuning();

  ComplexMatrix excited = ComplexMatrix::Zero(2, 2);
  excited(1, 1) = 1.0;
  const ComplexMatrix h_rot =
      delta * kron(excited, identity_matrix(d)) + ops.h_int.matrix();
  const ComplexMatrix u_rot = propagator(HermitianOperator(h_rot), t);

  ComplexVector phases = ComplexVector::Ones(2 * d);
  for (Index m = 0; m < d; ++m) {
    phases(d + m) = std::exp(Complex(0.0, delta * t));
  }
  return phases.asDiagonal() * u_rot;
}

ReducedStates analytic_reduced_states(const JCParams& p, double t) {
  p.validate();
  const Index d = p.fock_dim();
  const Index n = p.n;
  const Complex xi = p.xi;
  const double zeta = p.zeta();

  const Complex c_nm1 = jc_coefficient_c(p, n - 1, t);
  const Complex c_np1 = jc_coefficient_c(p, n + 1, t);
  const Complex d_nm1 = jc_coefficient_d(p, n - 1, t);
  const Complex d_np1 = jc_coefficient_d(p, n + 1, t);

  const double a1 = (n - 1) * zeta * zeta * std::norm(d_nm1);
  const double a2 = zeta * zeta * std::norm(c_nm1);
  const Complex a3 = std::sqrt(static_cast<double>(n - 1)) * std::conj(xi) *
                     zeta * std::conj(c_np1) * d_nm1;
  const double b1 = std::norm(xi) * std::norm(c_np1);
  const double b2 = (n + 1) * std::norm(xi) * std::norm(d_np1);
  const Complex b3 = -std::sqrt(static_cast<double>(n + 1)) * std::conj(xi) *
                     zeta * std::conj(c_nm1) * d_np1;

  ComplexMatrix rho_s = ComplexMatrix::Zero(2, 2);
  rho_s(0, 0) = a1 + b1;
  rho_s(1, 1) = a2 + b2;

  // Bath block on Fock levels n-2 .. n+1.
  ComplexMatrix rho_b = ComplexMatrix::Zero(d, d);
  rho_b(n - 2, n - 2) = a1;
  rho_b(n - 2, n) = a3;
  rho_b(n - 1, n - 1) = a2;
  rho_b(n - 1, n + 1) = b3;
  rho_b(n, n - 2) = std::conj(a3);
  rho_b(n, n) = b1;
  rho_b(n + 1, n - 1) = std::conj(b3);
  rho_b(n + 1, n + 1) = b2;

  return ReducedStates{DensityOperator(rho_s), DensityOperator(rho_b)};
}

ReducedStates oracle_reduced_states(const JCParams& p, double t) {
  const DensityOperator rho0 = initial_state(p);
  const DensityOperator rho = evolve(rho0, oracle_propagator(p, t));
  const Partition split = p.partition();
  ReducedStates reduced{partial_trace(rho, split, {0}),
                        partial_trace(rho, split, {1})};
  check_state_truncation(reduced.rho_b, t);
  return reduced;
}

double closed_form_beta(double omega, double energy) {
  if (!(omega > 0.0)) {
    throw ParameterError("closed_form_beta: omega must be positive");
  }
  if (!(energy > 0.0)) {
    throw EnergyRangeError(
        "closed_form_beta: oscillator mean energy must be positive");
  }
  return std::log1p(omega / energy) / omega;
}

Index certified_fock_dim(double beta, double omega, Index at_least) {
  if (!(beta > 0.0) || !(omega > 0.0)) {
    throw TruncationError(
        "certified_fock_dim: certification requires beta > 0 and omega > 0");
  }
  // Smallest d with e^{-beta omega d} < threshold * Z, Z the geometric-series
  // partition function 1/(1 - e^{-beta omega}).
  const double log_z = -std::log1p(-std::exp(-beta * omega));
  const double d_real = (-std::log(kThermalTailThreshold) + log_z) / (beta * omega);
  Index d = std::max<Index>(at_least, static_cast<Index>(std::ceil(d_real)) + 1);
  if (d > kMaxCertifiedFockDim) {
    std::ostringstream os;
    os << "certified_fock_dim: certification needs Fock dimension " << d
       << " (beta*omega = " << beta * omega << "), beyond the supported maximum";
    throw TruncationError(os.str());
  }
  return d;
}

ThermalReference bath_thermal_reference(const JCParams& p,
                                        const DensityOperator& rho_b) {
  p.validate();
  const Index d = p.fock_dim();
  if (rho_b.dim() != d) {
    throw DimensionError("bath_thermal_reference: bath state dimension mismatch");
  }
  const ComplexMatrix b = annihilation_operator(d);
  const HermitianOperator h_b_small(ComplexMatrix(p.omega * (b.adjoint() * b)));
  const double energy = expectation_value(h_b_small, rho_b);
  const double beta = closed_form_beta(p.omega, energy);

  const Index d_th = certified_fock_dim(beta, p.omega, d);
  const ComplexMatrix b_big = annihilation_operator(d_th);
  const HermitianOperator h_b_big(ComplexMatrix(p.omega * (b_big.adjoint() * b_big)));
  ThermalReference thermal = gibbs_state(h_b_big, beta);

  const double beta_bisect = match_beta(h_b_big, energy);
  if (std::abs(beta_bisect - beta) > 1e-6) {
    std::ostringstream os;
    os << "bath_thermal_reference: closed-form beta " << beta
       << " and matched beta " << beta_bisect
       << " disagree beyond 1e-6; truncation is not certified";
    throw TruncationError(os.str());
  }
  return thermal;
}

Trajectory simulate(const JCParams& p, const TrajectoryObserver& observer) {
  p.validate();
  const JCOperators ops = build_hamiltonians(p);
  const DensityOperator rho0 = initial_state(p);
  const Partition split = p.partition();

  const DensityOperator rho_b0 = partial_trace(rho0, split, {1});
  const ThermalReference thermal = bath_thermal_reference(p, rho_b0);

  std::ostringstream hash_seed;
  hash_seed << "jc;omega0=" << p.omega0 << ";omega=" << p.omega << ";g=" << p.g
            << ";n=" << p.n << ";xi=" << p.xi.real() << "+" << p.xi.imag()
            << "i;d_fock=" << p.fock_dim() << ";t_max=" << p.t_max
            << ";steps=" << p.steps;

  TrajectoryObserver guarded = [&](double t, const DensityOperator& rho_sb,
                                   const DensityOperator& rho_s,
                                   const DensityOperator& rho_b) {
    check_state_truncation(rho_b, t);
    if (observer) {
      observer(t, rho_sb, rho_s, rho_b);
    }
  };

  const std::vector<DrivingLeg> legs = {
      DrivingLeg{ops.h_s, ops.h_int, p.t_max, p.steps}};
  return generate_trajectory(rho0, split, ops.h_b, legs, 1.0, thermal,
                             hash_seed.str(), guarded);
}

}  // namespace qthermo

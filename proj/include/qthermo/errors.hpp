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

#ifndef QTHERMO_ERRORS_HPP
#define QTHERMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qthermo {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operand shapes or partitions do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A matrix required to be self-adjoint is not, beyond tolerance.
class HermiticityError : public Error {
 public:
  using Error::Error;
};

// A density operator has an eigenvalue below the clamping window.
class PositivityError : public Error {
 public:
  using Error::Error;
};

// A density operator's trace deviates from one beyond tolerance.
class TraceError : public Error {
 public:
  using Error::Error;
};

// An evolution operator fails the unitarity check.
class UnitarityError : public Error {
 public:
  using Error::Error;
};

// A scalar function is undefined on part of an operator's spectrum.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A scalar parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A target energy lies outside the open spectral interval of a Hamiltonian.
class EnergyRangeError : public Error {
 public:
  using Error::Error;
};

// A Fock-space truncation fails its certification threshold.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Endpoint states of a supposed unitary trajectory have different joint entropy.
class NonUnitaryTrajectoryError : public Error {
 public:
  using Error::Error;
};

// Too few records for a finite-difference operation.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// A run configuration failed to parse or validate.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An internal numerical routine failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace qthermo

#endif  // QTHERMO_ERRORS_HPP

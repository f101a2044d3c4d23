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

#ifndef QTHERMO_RUNNER_HPP
#define QTHERMO_RUNNER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "qthermo/jaynes_cummings.hpp"

namespace qthermo {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericError = 3;

// Tolerance the identity suites are verified against.
inline constexpr double kIdentityTol = 1e-8;

struct RunOptions {
  std::string command;  // fig1 | fig2 | fig3 | fig4 | verify | run
  std::optional<std::string> config_path;
  std::optional<std::string> out_path;  // stdout when absent
  std::uint64_t seed = 1;
  int jobs = 0;  // 0 = available cores
  std::optional<double> xi;
  std::optional<int> steps;
  std::optional<double> tmax;
  std::optional<int> instances;
  bool refine = false;  // doubled grid for flux-convergence reporting
};

// Executes one command, writing its primary output to `out` (or the
// configured --out file) and the human summary of `verify` to `err`.
// Returns a process exit code; configuration and numeric failures are
// reported by exception (ConfigError, TruncationError, ...).
int run_command(const RunOptions& options, std::ostream& out, std::ostream& err);

// Deterministic helper: runs fn(0..count-1) on up to `jobs` threads.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn);

}  // namespace qthermo

#endif  // QTHERMO_RUNNER_HPP

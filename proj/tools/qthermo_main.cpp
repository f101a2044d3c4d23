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

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "qthermo/runner.hpp"

namespace {

void add_common_options(CLI::App* app, qthermo::RunOptions& opts) {
  app->add_option("--config", opts.config_path, "JSON configuration file");
  app->add_option("--out", opts.out_path, "output file (stdout when omitted)");
  app->add_option("--seed", opts.seed, "seed for the random suites");
  app->add_option("--jobs", opts.jobs, "worker threads (0 = available cores)");
}

void add_sweep_options(CLI::App* app, qthermo::RunOptions& opts) {
  app->add_option_function<double>(
      "--xi", [&opts](double v) { opts.xi = v; },
      "initial-state amplitude |xi|");
  app->add_option_function<int>(
      "--steps", [&opts](int v) { opts.steps = v; }, "time-grid steps");
  app->add_option_function<double>(
      "--tmax", [&opts](double v) { opts.tmax = v; }, "evolution time span");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qthermo: entropy, information and thermodynamic ledgers for "
      "finite-dimensional quantum systems"};
  app.require_subcommand(1);

  qthermo::RunOptions opts;

  for (const std::string name : {"fig1", "fig2", "fig3", "fig4"}) {
    CLI::App* sub = app.add_subcommand(
        name, name == "fig1"
                  ? "initial-state mutual information versus |xi| (CSV)"
                  : "time series of the information/heat ledger (CSV)");
    add_common_options(sub, opts);
    add_sweep_options(sub, opts);
    sub->add_flag("--refine", opts.refine,
                  "also run a doubled grid and report flux-identity convergence");
    sub->callback([&opts, name] { opts.command = name; });
  }

  CLI::App* verify = app.add_subcommand(
      "verify", "random-instance identity suites (JSON report)");
  add_common_options(verify, opts);
  verify->add_option_function<int>(
      "--instances", [&opts](int v) { opts.instances = v; },
      "instances per suite (default 1000)");
  verify->callback([&opts] { opts.command = "verify"; });

  CLI::App* run = app.add_subcommand(
      "run", "user-supplied piecewise-constant scenario (CSV ledger)");
  add_common_options(run, opts);
  run->add_option_function<int>(
      "--steps", [&opts](int v) { opts.steps = v; },
      "default records per leg when a leg does not set one");
  run->callback([&opts] { opts.command = "run"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qthermo::kExitOk : qthermo::kExitConfigError;
  }

  try {
    return qthermo::run_command(opts, std::cout, std::cerr);
  } catch (const qthermo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return qthermo::kExitConfigError;
  } catch (const qthermo::Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return qthermo::kExitNumericError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qthermo::kExitNumericError;
  }
}

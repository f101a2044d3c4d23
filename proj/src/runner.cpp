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

#include "qthermo/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "json.hpp"

#include "qthermo/csv.hpp"
#include "qthermo/random.hpp"

namespace qthermo {

using nlohmann::json;

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn) {
  if (jobs <= 0) {
    jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), std::max<std::size_t>(count, 1));
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(count);
        break;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
}

double get_number(const json& j, const std::string& key, const std::string& ctx,
                  double fallback, bool required = false) {
  if (!j.contains(key)) {
    if (required) throw ConfigError(ctx + ": missing required field '" + key + "'");
    return fallback;
  }
  if (!j.at(key).is_number()) {
    throw ConfigError(ctx + ": field '" + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key, const std::string& ctx,
            int fallback, bool required = false) {
  if (!j.contains(key)) {
    if (required) throw ConfigError(ctx + ": missing required field '" + key + "'");
    return fallback;
  }
  if (!j.at(key).is_number_integer()) {
    throw ConfigError(ctx + ": field '" + key + "' must be an integer");
  }
  return j.at(key).get<int>();
}

// Matrices arrive as flattened row-major real/imag entry lists.
ComplexMatrix matrix_from_json(const json& j, Index dim, const std::string& ctx) {
  if (!j.is_object()) {
    throw ConfigError(ctx + ": expected an object with 'real' (and optional 'imag') lists");
  }
  if (!j.contains("real") || !j.at("real").is_array()) {
    throw ConfigError(ctx + ": missing 'real' entry list");
  }
  const auto& re = j.at("real");
  const std::size_t need = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
  if (re.size() != need) {
    std::ostringstream os;
    os << ctx << ": 'real' has " << re.size() << " entries, expected " << need
       << " for a " << dim << "x" << dim << " matrix";
    throw ConfigError(os.str());
  }
  const json* im = nullptr;
  if (j.contains("imag")) {
    im = &j.at("imag");
    if (!im->is_array() || im->size() != need) {
      throw ConfigError(ctx + ": 'imag' must match 'real' in length");
    }
  }
  ComplexMatrix m(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      const std::size_t flat = static_cast<std::size_t>(r * dim + c);
      const double real_part = re.at(flat).get<double>();
      const double imag_part = im ? im->at(flat).get<double>() : 0.0;
      m(r, c) = Complex(real_part, imag_part);
    }
  }
  return m;
}

JCParams jc_params_from(const json* cfg, const RunOptions& opts,
                        double default_xi) {
  JCParams p;
  p.xi = default_xi;
  if (cfg) {
    const std::string ctx = "config";
    p.omega0 = get_number(*cfg, "omega0", ctx, p.omega0);
    p.omega = get_number(*cfg, "omega", ctx, p.omega);
    p.g = get_number(*cfg, "g", ctx, p.g);
    p.n = get_int(*cfg, "n", ctx, p.n);
    p.t_max = get_number(*cfg, "t_max", ctx, p.t_max);
    p.steps = get_int(*cfg, "steps", ctx, p.steps);
    p.d_fock = get_int(*cfg, "d_fock", ctx, static_cast<int>(p.d_fock));
    if (cfg->contains("xi")) {
      const json& x = cfg->at("xi");
      if (x.is_number()) {
        p.xi = x.get<double>();
      } else if (x.is_array() && x.size() == 2 && x.at(0).is_number() &&
                 x.at(1).is_number()) {
        p.xi = Complex(x.at(0).get<double>(), x.at(1).get<double>());
      } else {
        throw ConfigError("config: 'xi' must be a number or a [re, im] pair");
      }
    }
  }
  if (opts.xi) p.xi = *opts.xi;
  if (opts.steps) p.steps = *opts.steps;
  if (opts.tmax) p.t_max = *opts.tmax;
  return p;
}

std::string jc_canonical(const std::string& command, const JCParams& p,
                         std::uint64_t seed) {
  std::ostringstream os;
  os << command << ";omega0=" << format_double(p.omega0)
     << ";omega=" << format_double(p.omega) << ";g=" << format_double(p.g)
     << ";n=" << p.n << ";xi=" << format_double(p.xi.real()) << "+"
     << format_double(p.xi.imag()) << "i;d_fock=" << p.fock_dim()
     << ";t_max=" << format_double(p.t_max) << ";steps=" << p.steps
     << ";seed=" << seed;
  return os.str();
}

void add_standard_metadata(CsvTable& table, const std::string& canonical,
                           std::uint64_t seed) {
  table.add_metadata("config_hash", hex64(fnv1a64(canonical)));
  table.add_metadata("config", canonical);
  table.add_metadata("seed", std::to_string(seed));
  table.add_metadata("tolerances",
                     "herm_tol=1e-12 trace_tol=1e-10 psd_tol=1e-10 "
                     "supp_tol=1e-12 identity_tol=1e-8");
  table.add_metadata(
      "sign_conventions",
      "dS = S(rho_S) - S(rho'_S) (system entropy decrease); dI, dD, dQ are "
      "forward differences (final - initial); residuals are left minus right "
      "of their defining equalities; ds flux column is the entropy-decrease "
      "rate; dq_beta is the exact instantaneous beta*tr[(IxH_B)(-i)[H,rho]]");
}

void write_table(const CsvTable& table, const RunOptions& opts,
                 std::ostream& out) {
  if (opts.out_path) {
    table.write_file(*opts.out_path);
  } else {
    table.write(out);
  }
}

double flux_residual_max(const Trajectory& traj) {
  double worst = 0.0;
  for (const FluxRecord& f : flux_series(traj)) {
    worst = std::max(worst, std::abs(f.dq_beta - (f.ds + f.di + f.dd)));
  }
  return worst;
}

int cmd_fig1(const json* cfg, const RunOptions& opts, std::ostream& out) {
  JCParams base = jc_params_from(cfg, opts, 0.5);
  const int points = 201;

  // Uniform grid plus one exact sample at the analytic peak 1/sqrt(2); the
  // uniform grid never contains it.
  std::vector<double> xs(points + 1);
  for (int i = 0; i < points; ++i) {
    xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  }
  xs[points] = 1.0 / std::sqrt(2.0);
  std::sort(xs.begin(), xs.end());

  std::vector<double> info(xs.size());
  parallel_for(xs.size(), opts.jobs, [&](std::size_t i) {
    JCParams p = base;
    p.xi = xs[i];
    const DensityOperator rho = initial_state(p);
    info[i] = correlation_information(rho, p.partition());
  });

  CsvTable table;
  add_standard_metadata(table, jc_canonical("fig1", base, opts.seed), opts.seed);
  table.add_metadata("sweep", "201 uniform points on [0,1] plus the exact peak 1/sqrt(2)");
  table.set_columns({"xi_abs", "mutual_information_nats"});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    table.add_row({format_double(xs[i]), format_double(info[i])});
  }
  write_table(table, opts, out);
  return kExitOk;
}

int cmd_fig_time_series(const std::string& command, const json* cfg,
                        const RunOptions& opts, std::ostream& out) {
  const double default_xi = (command == "fig3") ? 0.71 : 0.5;
  const JCParams p = jc_params_from(cfg, opts, default_xi);
  const Trajectory traj = simulate(p);

  std::string column;
  std::vector<double> values(traj.records.size());
  if (command == "fig4") {
    column = "delta_d";
    const double d0 = traj.records.front().D_bath;
    for (std::size_t i = 0; i < traj.records.size(); ++i) {
      values[i] = traj.records[i].D_bath - d0;
    }
  } else {
    const auto fluxes = flux_series(traj);
    if (command == "fig2") {
      column = "di_dt";
      for (std::size_t i = 0; i < fluxes.size(); ++i) values[i] = fluxes[i].di;
    } else {
      column = "di_dt_plus_dd_dt";
      for (std::size_t i = 0; i < fluxes.size(); ++i) {
        values[i] = fluxes[i].di + fluxes[i].dd;
      }
    }
  }

  CsvTable table;
  add_standard_metadata(table, jc_canonical(command, p, opts.seed), opts.seed);
  table.add_metadata("beta", format_double(traj.beta));
  if (opts.refine) {
    JCParams refined = p;
    refined.steps = 2 * p.steps;
    const Trajectory traj2 = simulate(refined);
    const double r1 = flux_residual_max(traj);
    const double r2 = flux_residual_max(traj2);
    table.add_metadata("flux_identity_max_residual", format_double(r1));
    table.add_metadata("flux_identity_max_residual_refined", format_double(r2));
    table.add_metadata("flux_identity_refinement_ratio",
                       format_double(r2 > 0.0 ? r1 / r2 : 0.0));
  }
  table.set_columns({"t", column});
  for (std::size_t i = 0; i < traj.records.size(); ++i) {
    table.add_row({format_double(traj.records[i].t), format_double(values[i])});
  }
  write_table(table, opts, out);
  return kExitOk;
}

struct VerifyInstanceDims {
  Index d_s;
  Index d_b;
};

VerifyInstanceDims sample_dims(Rng& rng) {
  std::uniform_int_distribution<int> ds_dist(2, 4);
  std::uniform_int_distribution<int> db_dist(2, 8);
  return VerifyInstanceDims{static_cast<Index>(ds_dist(rng)),
                            static_cast<Index>(db_dist(rng))};
}

double verify_entropy_increase(Rng& rng) {
  const VerifyInstanceDims dims = sample_dims(rng);
  const Partition split({dims.d_s, dims.d_b});
  const DensityOperator rho = random_density(split.total_dim(), rng);
  const DensityOperator rho_after =
      evolve(rho, random_unitary(split.total_dim(), rng));
  return std::abs(entropy_increase_residual(rho, rho_after, split, 1.0));
}

double verify_landauer(Rng& rng) {
  const VerifyInstanceDims dims = sample_dims(rng);
  const Partition split({dims.d_s, dims.d_b});
  const DensityOperator rho = random_density(split.total_dim(), rng);
  const DensityOperator rho_after =
      evolve(rho, random_unitary(split.total_dim(), rng));
  const HermitianOperator h_b = random_hermitian(dims.d_b, rng);

  const DensityOperator rho_b = partial_trace(rho, split, {1});
  const DensityOperator rho_b_after = partial_trace(rho_after, split, {1});
  const ThermalReference thermal =
      matched_thermal_reference(h_b, expectation_value(h_b, rho_b));

  const double r1 = landauer_residual(rho, rho_after, split, h_b, thermal);

  // Independent route through the general relative entropy.
  const DensityOperator rho_s = partial_trace(rho, split, {0});
  const DensityOperator rho_s_after = partial_trace(rho_after, split, {0});
  const double d_q = heat(h_b, rho_b, rho_b_after);
  const double d_s_dec =
      von_neumann_entropy(rho_s) - von_neumann_entropy(rho_s_after);
  const double d_i = correlation_information(rho_after, split) -
                     correlation_information(rho, split);
  const double d_d = delta_d(rho_b, rho_b_after, thermal);
  const double r2 = thermal.beta() * d_q - (d_s_dec + d_i + d_d);

  return std::max(std::abs(r1), std::abs(r2));
}

double verify_second_law(Rng& rng) {
  const VerifyInstanceDims dims = sample_dims(rng);
  const Partition split({dims.d_s, dims.d_b});
  const Index joint = split.total_dim();
  const DensityOperator rho0 = random_density(joint, rng);
  const HermitianOperator h_b = random_hermitian(dims.d_b, rng);
  const ThermalReference thermal = matched_thermal_reference(
      h_b, expectation_value(h_b, partial_trace(rho0, split, {1})));

  std::uniform_int_distribution<int> leg_count_dist(1, 3);
  std::uniform_real_distribution<double> duration_dist(0.2, 1.2);
  const int n_legs = leg_count_dist(rng);

  const ComplexMatrix h_b_lifted = kron(identity_matrix(dims.d_s), h_b.matrix());
  DensityOperator rho = rho0;
  std::optional<DrivenSnapshot> before;
  HermitianOperator h_s = random_hermitian(dims.d_s, rng);
  HermitianOperator h_int = random_hermitian(joint, rng, 0.5);
  for (int leg = 0; leg < n_legs; ++leg) {
    if (leg > 0) {
      h_s = random_hermitian(dims.d_s, rng);
      h_int = random_hermitian(joint, rng, 0.5);
    }
    if (!before) {
      before = DrivenSnapshot{rho, h_s, h_int};
    }
    const ComplexMatrix h_total =
        kron(h_s.matrix(), identity_matrix(dims.d_b)) + h_b_lifted + h_int.matrix();
    rho = evolve(rho, propagator(HermitianOperator(h_total), duration_dist(rng)));
  }
  const DrivenSnapshot after{rho, h_s, h_int};
  return std::abs(second_law_residual(*before, after, split, h_b, thermal));
}

int cmd_verify(const json* cfg, const RunOptions& opts, std::ostream& out,
               std::ostream& err) {
  int instances = 1000;
  if (cfg) instances = get_int(*cfg, "instances", "config", instances);
  if (opts.instances) instances = *opts.instances;
  if (instances < 0) throw ConfigError("verify: instances must be >= 0");
  const std::size_t count = static_cast<std::size_t>(instances);

  struct Suite {
    std::string name;
    double (*run)(Rng&);
    std::uint64_t salt;
  };
  const std::vector<Suite> suites = {
      {"entropy_increase_eq4", &verify_entropy_increase, 0x01},
      {"landauer_eq12", &verify_landauer, 0x02},
      {"second_law_eq19", &verify_second_law, 0x03},
  };

  json report;
  report["command"] = "verify";
  report["seed"] = opts.seed;
  report["instances"] = instances;
  report["tolerance"] = kIdentityTol;
  report["suites"] = json::array();

  bool all_pass = true;
  for (const Suite& suite : suites) {
    std::vector<double> residuals(count, 0.0);
    parallel_for(count, opts.jobs, [&](std::size_t i) {
      Rng rng = instance_rng(opts.seed ^ (suite.salt << 56), i);
      residuals[i] = suite.run(rng);
    });
    const double worst =
        residuals.empty() ? 0.0
                          : *std::max_element(residuals.begin(), residuals.end());
    const bool pass = worst < kIdentityTol;
    all_pass = all_pass && pass;

    json entry;
    entry["name"] = suite.name;
    entry["count"] = instances;
    entry["max_abs_residual"] = worst;
    entry["pass"] = pass;
    report["suites"].push_back(entry);
    err << (pass ? "[PASS] " : "[FAIL] ") << suite.name << ": max |residual| = "
        << format_double(worst) << " over " << instances << " instances\n";
  }
  report["pass"] = all_pass;

  const std::string text = report.dump(2) + "\n";
  if (opts.out_path) {
    std::ofstream file(*opts.out_path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file: " + *opts.out_path);
    file << text;
  } else {
    out << text;
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

struct Scenario {
  Partition split;
  double k = 1.0;
  HermitianOperator h_b;
  DensityOperator rho0;
  std::vector<DrivingLeg> legs;
  std::string canonical;
};

Scenario parse_scenario(const json& cfg, const RunOptions& opts) {
  if (!cfg.contains("dims") || !cfg.at("dims").is_array() ||
      cfg.at("dims").size() != 2 || !cfg.at("dims").at(0).is_number_integer() ||
      !cfg.at("dims").at(1).is_number_integer()) {
    throw ConfigError("scenario: 'dims' must be an integer [d_system, d_bath] pair");
  }
  const Index d_s = cfg.at("dims").at(0).get<Index>();
  const Index d_b = cfg.at("dims").at(1).get<Index>();
  if (d_s < 2 || d_b < 2) {
    throw ConfigError("scenario: subsystem dimensions must be at least 2");
  }
  Partition split({d_s, d_b});
  const Index joint = split.total_dim();

  if (!cfg.contains("h_b")) {
    throw ConfigError("scenario: missing bath Hamiltonian 'h_b'");
  }
  HermitianOperator h_b = [&] {
    try {
      return HermitianOperator(matrix_from_json(cfg.at("h_b"), d_b, "scenario.h_b"));
    } catch (const HermiticityError& e) {
      throw ConfigError(std::string("scenario.h_b: ") + e.what());
    }
  }();

  if (!cfg.contains("initial") || !cfg.at("initial").is_object()) {
    throw ConfigError("scenario: missing 'initial' state object");
  }
  const json& init = cfg.at("initial");
  DensityOperator rho0 = [&]() -> DensityOperator {
    try {
      if (init.contains("rho_sb")) {
        return DensityOperator(
            matrix_from_json(init.at("rho_sb"), joint, "scenario.initial.rho_sb"));
      }
      if (!init.contains("rho_s")) {
        throw ConfigError(
            "scenario.initial: provide 'rho_sb', or 'rho_s' with 'rho_b' or 'bath_beta'");
      }
      const ComplexMatrix rho_s =
          matrix_from_json(init.at("rho_s"), d_s, "scenario.initial.rho_s");
      if (init.contains("bath_beta")) {
        const double beta =
            get_number(init, "bath_beta", "scenario.initial", 0.0, true);
        const ThermalReference bath = gibbs_state(h_b, beta);
        return DensityOperator(kron(rho_s, bath.state().matrix()));
      }
      if (!init.contains("rho_b")) {
        throw ConfigError("scenario.initial: missing 'rho_b' (or 'bath_beta')");
      }
      const ComplexMatrix rho_b =
          matrix_from_json(init.at("rho_b"), d_b, "scenario.initial.rho_b");
      return DensityOperator(kron(rho_s, rho_b));
    } catch (const HermiticityError& e) {
      throw ConfigError(std::string("scenario.initial: ") + e.what());
    } catch (const TraceError& e) {
      throw ConfigError(std::string("scenario.initial: ") + e.what());
    } catch (const PositivityError& e) {
      throw ConfigError(std::string("scenario.initial: ") + e.what());
    }
  }();

  if (!cfg.contains("legs") || !cfg.at("legs").is_array() || cfg.at("legs").empty()) {
    throw ConfigError("scenario: 'legs' must be a non-empty array");
  }
  const int default_steps = opts.steps ? *opts.steps : 50;
  std::vector<DrivingLeg> legs;
  for (std::size_t li = 0; li < cfg.at("legs").size(); ++li) {
    const json& jleg = cfg.at("legs").at(li);
    const std::string ctx = "scenario.legs[" + std::to_string(li) + "]";
    const double duration = get_number(jleg, "duration", ctx, 0.0, true);
    if (!(duration > 0.0)) throw ConfigError(ctx + ": duration must be positive");
    const int steps = get_int(jleg, "steps", ctx, default_steps);
    if (steps < 1) throw ConfigError(ctx + ": steps must be >= 1");
    if (!jleg.contains("h_s")) throw ConfigError(ctx + ": missing 'h_s'");
    try {
      HermitianOperator h_s(matrix_from_json(jleg.at("h_s"), d_s, ctx + ".h_s"));
      HermitianOperator h_int =
          jleg.contains("h_int")
              ? HermitianOperator(
                    matrix_from_json(jleg.at("h_int"), joint, ctx + ".h_int"))
              : HermitianOperator(ComplexMatrix::Zero(joint, joint));
      legs.push_back(DrivingLeg{std::move(h_s), std::move(h_int), duration, steps});
    } catch (const HermiticityError& e) {
      throw ConfigError(ctx + ": " + e.what());
    }
  }

  Scenario scenario{std::move(split), get_number(cfg, "k", "scenario", 1.0),
                    std::move(h_b), std::move(rho0), std::move(legs),
                    cfg.dump()};
  if (!(scenario.k > 0.0)) throw ConfigError("scenario: 'k' must be positive");
  return scenario;
}

int cmd_run(const json* cfg, const RunOptions& opts, std::ostream& out) {
  if (!cfg) {
    throw ConfigError("run: a --config scenario file is required");
  }
  const Scenario scenario = parse_scenario(*cfg, opts);
  const Trajectory traj = generate_trajectory(
      scenario.rho0, scenario.split, scenario.h_b, scenario.legs, scenario.k,
      std::nullopt, scenario.canonical);

  CsvTable table;
  add_standard_metadata(table, scenario.canonical, opts.seed);
  table.add_metadata("beta", format_double(traj.beta));
  table.add_metadata("k", format_double(traj.k));
  table.set_columns({"t", "S_system", "S_bath", "S_joint", "I", "D_bath", "Q",
                     "W_total", "W_system", "W_heat", "W_interaction",
                     "F_system", "heat_flux", "residual_landauer",
                     "residual_second_law", "residual_entropy_increase",
                     "product", "thermal_equilibrium", "weak_coupling"});
  for (const ThermoRecord& r : traj.records) {
    table.add_row({format_double(r.t), format_double(r.S_system),
                   format_double(r.S_bath), format_double(r.S_joint),
                   format_double(r.I), format_double(r.D_bath),
                   format_double(r.Q), format_double(r.W.total_work),
                   format_double(r.W.system_term), format_double(r.W.heat),
                   format_double(r.W.interaction_term),
                   format_double(r.F_system), format_double(r.heat_flux),
                   format_double(r.residual_landauer),
                   format_double(r.residual_second_law),
                   format_double(r.residual_entropy_increase),
                   r.conditions.product ? "1" : "0",
                   r.conditions.thermal_equilibrium ? "1" : "0",
                   r.conditions.weak_coupling ? "1" : "0"});
  }
  write_table(table, opts, out);
  return kExitOk;
}

}  // namespace

int run_command(const RunOptions& options, std::ostream& out, std::ostream& err) {
  std::optional<json> cfg;
  if (options.config_path) {
    cfg = load_config(*options.config_path);
  }
  const json* cfg_ptr = cfg ? &*cfg : nullptr;

  try {
    if (options.command == "fig1") {
      return cmd_fig1(cfg_ptr, options, out);
    }
    if (options.command == "fig2" || options.command == "fig3" ||
        options.command == "fig4") {
      return cmd_fig_time_series(options.command, cfg_ptr, options, out);
    }
    if (options.command == "verify") {
      return cmd_verify(cfg_ptr, options, out, err);
    }
    if (options.command == "run") {
      return cmd_run(cfg_ptr, options, out);
    }
  } catch (const json::exception& e) {
    // Malformed field types surface here; they are configuration mistakes.
    throw ConfigError(std::string("config: ") + e.what());
  }
  throw ConfigError("unknown command: " + options.command);
}

}  // namespace qthermo

// Copyright 2026 The noisyqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "noisyqec/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "noisyqec/analytics.hpp"
#include "noisyqec/cli/acceptance.hpp"
#include "noisyqec/cli/config.hpp"
#include "noisyqec/cli/experiments.hpp"

namespace noisyqec::cli {

namespace {

// Raw option values; converted and checked once the config file is merged.
struct ExperimentArgs {
  std::string config;
  std::string code = "5bit";
  std::string scenario = "storage";
  std::string method = "master";
  std::string kappa;
  std::string T;
  double Delta = 0.0;
  double dt = kDefaultMasterStep;
  double trajectory_dt = kDefaultTrajectoryStep;
  std::size_t trajectories = 400;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool single_qubit = false;
  std::string output;
  std::string format = "csv";
  CLI::Option* delta_opt = nullptr;
};

void add_experiment_options(CLI::App& sub, ExperimentArgs& a) {
  sub.add_option("--config", a.config, "flat key = value file; command-line flags take precedence");
  sub.add_option("--code", a.code, "3bit or 5bit")->capture_default_str();
  sub.add_option("--scenario", a.scenario, "storage or transmission")->capture_default_str();
  sub.add_option("--method", a.method, "master, qsd or jumps")->capture_default_str();
  sub.add_option("--kappa", a.kappa, "noise rates: list a,b,c or log range lo:hi:count");
  sub.add_option("--T", a.T, "total times: list a,b,c or linear range lo:hi:count");
  a.delta_opt = sub.add_option("--Delta", a.Delta, "E+D time for the analytic columns (default: schedule length)");
  sub.add_option("--dt", a.dt, "master-equation step")->capture_default_str();
  sub.add_option("--trajectory-dt", a.trajectory_dt, "trajectory step")->capture_default_str();
  sub.add_option("--trajectories", a.trajectories, "trajectories per point")->capture_default_str();
  sub.add_option("--seed", a.seed, "master seed")->capture_default_str();
  sub.add_option("--threads", a.threads, "worker threads (0: NOISYQEC_THREADS or all cores)")->capture_default_str();
  sub.add_flag("--single-qubit", a.single_qubit, "only the unprotected qubit");
  sub.add_option("--output", a.output, "output file (default: standard output)");
  sub.add_option("--format", a.format, "csv or json")->capture_default_str();
}

/// Fills options not given on the command line from a flat key = value file.
void apply_config_file(CLI::App& sub, const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw UsageError("config: cannot read '" + path + "'");
  const auto items = CLI::ConfigTOML().from_file(path);
  for (const auto& item : items) {
    if (!item.parents.empty()) throw UsageError("config: sections are not supported ('" + item.fullname() + "')");
    std::string key = item.name;
    std::replace(key.begin(), key.end(), '_', '-');
    CLI::Option* opt = key == "config" ? nullptr : sub.get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("config: unknown key '" + item.name + "'");
    if (opt->count() > 0) continue;
    std::string value;
    for (const auto& part : item.inputs) value += (value.empty() ? "" : ",") + part;
    opt->add_result(value);
    opt->run_callback();
  }
}

ExperimentConfig to_config(const ExperimentArgs& a, bool sweep) {
  ExperimentConfig c = sweep ? ExperimentConfig::sweep_defaults() : ExperimentConfig{};
  c.code = parse_code(a.code);
  c.scenario = parse_scenario(a.scenario);
  c.method = parse_method(a.method);
  if (!a.kappa.empty()) {
    c.kappas = parse_grid(a.kappa, true, "kappa");
  } else if (!sweep) {
    throw UsageError("kappa: required (--kappa or a config key)");
  }
  if (!a.T.empty()) {
    c.times = parse_grid(a.T, false, "T");
  } else if (!sweep) {
    throw UsageError("T: required (--T or a config key)");
  }
  if (a.delta_opt->count() > 0) c.Delta = a.Delta;
  c.dt = a.dt;
  c.trajectory_dt = a.trajectory_dt;
  c.n_trajectories = a.trajectories;
  c.seed = a.seed;
  c.threads = a.threads;
  c.single_qubit = a.single_qubit;
  c.output = a.output;
  c.format = parse_format(a.format);
  c.validate();
  return c;
}

void write_result(const ExperimentConfig& cfg, const SweepResult& result, bool with_optimum, std::ostream& out,
                  std::ostream& err) {
  if (cfg.output.empty()) {
    if (cfg.format == OutputFormat::json) {
      out << to_json(result, with_optimum);
      return;
    }
    write_records_csv(out, result.records);
    if (with_optimum) {
      out << '\n';
      write_optimum_csv(out, result.optimum);
    }
    return;
  }
  const std::filesystem::path path(cfg.output);
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("output: cannot write '" + p.string() + "'");
    return f;
  };
  {
    std::ofstream f = open(path);
    if (cfg.format == OutputFormat::json) {
      f << to_json(result, with_optimum);
    } else {
      write_records_csv(f, result.records);
    }
  }
  err << "wrote " << path.string() << '\n';
  if (with_optimum && cfg.format == OutputFormat::csv) {
    const auto topt = path.parent_path() / (path.stem().string() + "_topt.csv");
    std::ofstream f = open(topt);
    write_optimum_csv(f, result.optimum);
    err << "wrote " << topt.string() << '\n';
  }
}

struct AnalyticArgs {
  int n = 5;
  double kappa = 0.0;
  double T = 0.0;
  double Delta = 0.0;
  std::string scenario = "storage";
  bool crossover = false;
  std::string format = "text";
  CLI::Option* kappa_opt = nullptr;
  CLI::Option* T_opt = nullptr;
  CLI::Option* delta_opt = nullptr;
};

using Fields = std::vector<std::pair<std::string, nlohmann::ordered_json>>;

void print_fields(const Fields& fields, const std::string& format, std::ostream& out) {
  if (format == "json") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& [k, v] : fields) doc[k] = v;
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : fields) {
    out << k << " = ";
    if (v.is_number_float()) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
      out << buf;
    } else if (v.is_string()) {
      out << v.get<std::string>();
    } else {
      out << v.dump();
    }
    out << '\n';
  }
}

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

int cmd_analytic(const AnalyticArgs& a, std::ostream& out) {
  if (a.format != "text" && a.format != "json") throw UsageError("format: expected text or json");
  const Scenario scenario = parse_scenario(a.scenario);
  Fields f;
  f.emplace_back("n", a.n);
  if (a.crossover) {
    if (a.n < 2) throw UsageError("n: the crossover needs n >= 2");
    f.emplace_back("crossover_kT", analytics::crossover_kT(a.n));
    print_fields(f, a.format, out);
    return kExitOk;
  }
  if (a.n != 3 && a.n != 5) throw UsageError("n: expected 3 or 5");
  if (a.kappa_opt->count() == 0) throw UsageError("kappa: required unless --crossover is given");
  if (a.T_opt->count() == 0) throw UsageError("T: required unless --crossover is given");
  if (!(a.kappa >= 0.0) || !std::isfinite(a.kappa)) throw UsageError("kappa: must be finite and non-negative");
  if (!(a.T > 0.0) || !std::isfinite(a.T)) throw UsageError("T: must be finite and positive");
  const CodeSpec code = code_for(a.n);
  const double Delta = a.delta_opt->count() > 0 ? a.Delta : code.delta();
  if (!(Delta > 0.0) || !std::isfinite(Delta)) throw UsageError("Delta: must be positive");
  const double kn = code.kappa_n(a.kappa);
  const double delta = Delta / a.T;
  const bool storage = scenario == Scenario::storage;
  if (storage && delta > 1.0) throw UsageError("T: storage needs T >= Delta");

  f.emplace_back("scenario", scenario_name(scenario));
  f.emplace_back("kappa", a.kappa);
  f.emplace_back("kappa_n", kn);
  f.emplace_back("T", a.T);
  f.emplace_back("Delta", Delta);
  f.emplace_back("delta", delta);
  f.emplace_back("crossover_kT", analytics::crossover_kT(a.n));
  f.emplace_back("p_snc", analytics::p_snc(kn, a.T));
  f.emplace_back("p_sc", analytics::p_sc(a.n, kn, a.T));
  if (storage) {
    f.emplace_back("s_sc", analytics::s_sc(a.n, kn, kn, a.T, delta));
    f.emplace_back("crossover_delta", analytics::storage_crossover_delta(a.n, kn * a.T));
    f.emplace_back("R", number(analytics::ratio_R(a.n, kn, a.T, delta)));
  } else {
    f.emplace_back("t_sc", analytics::t_sc(a.n, kn, kn, a.T, delta));
    f.emplace_back("crossover_delta", analytics::transmission_crossover_delta(a.n, kn * a.T));
    f.emplace_back("R", number(analytics::ratio_R_transmission(a.n, kn, a.T, delta)));
  }
  f.emplace_back("t_opt", number(analytics::t_opt(a.n, kn, Delta)));
  f.emplace_back("n_opt", number(analytics::n_opt(a.n, kn, a.T, delta)));
  f.emplace_back("max_failure", analytics::max_failure(a.n, kn, a.T, delta));
  if (storage) {
    const auto o = analytics::optimize_corrections(a.n, kn, a.T, delta);
    f.emplace_back("n_rounded", o.n_rounded);
    f.emplace_back("failure_exact", o.failure_exact);
    f.emplace_back("n_best", o.n_best);
    f.emplace_back("failure_best", o.failure_best);
  }
  f.emplace_back("m_nec", analytics::m_nec_analytic(code.noise_kind, a.kappa, a.T));
  f.emplace_back("m_analytic", storage ? analytics::m_analytic_code(a.n, kn, a.T, delta)
                                       : 0.5 * (1.0 - analytics::t_sc(a.n, kn, kn, a.T, delta)));
  print_fields(f, a.format, out);
  return kExitOk;
}

int cmd_derive_table(const std::string& code_name, bool schedule, std::ostream& out) {
  const CodeSpec code = code_for(parse_code(code_name));
  if (schedule) {
    out << "{\n\"encode\": " << schedule_to_json(code.encode) << ",\n\"decode\": " << schedule_to_json(code.decode)
        << "\n}\n";
    return kExitOk;
  }
  // Rederive so the printed table is checked against the networks.
  const CorrectionTable table = derive_correction_table(code);
  out << "syndrome,ancillas,errors,correction\n";
  for (unsigned s = 0; s < table.size(); ++s) {
    std::string bits;
    for (int k = 0; k + 1 < code.n; ++k) bits += ((s >> k) & 1U) ? '1' : '0';
    std::string errors;
    for (const auto& e : table.entries) {
      if (e.syndrome != s) continue;
      if (!errors.empty()) errors += ';';
      errors += e.error ? to_string(*e.error) : "none";
    }
    out << s << ',' << bits << ',' << errors << ',' << table.corrections[s] << '\n';
  }
  return kExitOk;
}

int cmd_selftest(std::ostream& out) {
  std::vector<int> ids;
  for (int k = 1; k <= kSelftestCriteria; ++k) ids.push_back(k);
  const auto results = run_acceptance(ids, out);
  const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  return ok ? kExitOk : kExitNumerical;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum error correction with noisy encoding and decoding", "noisyqec"};
  app.require_subcommand(1);

  AnalyticArgs an;
  CLI::App* analytic = app.add_subcommand("analytic", "closed-form crossovers, optimal interval and correction count");
  analytic->add_option("--n", an.n, "code size (3 or 5)")->capture_default_str();
  an.kappa_opt = analytic->add_option("--kappa", an.kappa, "noise rate kappa (kappa_n = 2 kappa or 4 kappa)");
  an.T_opt = analytic->add_option("--T", an.T, "total time");
  an.delta_opt = analytic->add_option("--Delta", an.Delta, "E+D time (default: schedule length)");
  analytic->add_option("--scenario", an.scenario, "storage or transmission")->capture_default_str();
  analytic->add_flag("--crossover", an.crossover, "only the kappa_n T crossover");
  analytic->add_option("--format", an.format, "text or json")->capture_default_str();

  ExperimentArgs run_args;
  CLI::App* run = app.add_subcommand("run", "mismatch at single (kappa, T) points");
  add_experiment_options(*run, run_args);

  ExperimentArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "kappa-T grid with the optimum-time curve");
  add_experiment_options(*sweep, sweep_args);

  std::string table_code = "5bit";
  bool table_schedule = false;
  CLI::App* table = app.add_subcommand("derive-table", "print the syndrome table derived from the networks");
  table->add_option("--code", table_code, "3bit or 5bit")->capture_default_str();
  table->add_flag("--schedule", table_schedule, "print the encode and decode schedules as JSON instead");

  CLI::App* selftest = app.add_subcommand("selftest", "fast acceptance checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analytic->parsed()) return cmd_analytic(an, out);
    if (table->parsed()) return cmd_derive_table(table_code, table_schedule, out);
    if (selftest->parsed()) return cmd_selftest(out);
    const bool is_sweep = sweep->parsed();
    CLI::App& sub = is_sweep ? *sweep : *run;
    ExperimentArgs& a = is_sweep ? sweep_args : run_args;
    if (!a.config.empty()) apply_config_file(sub, a.config);
    const ExperimentConfig cfg = to_config(a, is_sweep);
    SweepResult result;
    if (is_sweep) {
      result = run_sweep(cfg, err);
    } else {
      result.records = run_points(cfg);
    }
    write_result(cfg, result, is_sweep, out, err);
    return kExitOk;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace noisyqec::cli

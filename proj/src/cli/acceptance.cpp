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

#include "noisyqec/cli/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <set>
#include <sstream>
#include <utility>

#include "noisyqec/analytics.hpp"
#include "noisyqec/cli/commands.hpp"
#include "noisyqec/cli/experiments.hpp"
#include "noisyqec/codes.hpp"
#include "noisyqec/parallel.hpp"

namespace noisyqec::cli {

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string g(double v) { return fmt("%.6g", v); }

using Kets = std::vector<std::pair<double, std::string>>;

// Codewords written out ket by ket; character p is qubit p.
Kets three_bit_c0() {
  return {{1, "000"}, {1, "001"}, {1, "010"}, {1, "011"}, {1, "100"}, {1, "101"}, {1, "110"}, {1, "111"}};
}
Kets three_bit_c1() {
  return {{1, "000"}, {-1, "001"}, {-1, "010"}, {1, "011"}, {-1, "100"}, {1, "101"}, {1, "110"}, {-1, "111"}};
}
Kets five_bit_c0() {
  return {{1, "00000"},  {1, "11100"}, {-1, "01011"}, {-1, "10111"},
          {1, "00101"},  {1, "11001"}, {1, "01110"},  {1, "10010"}};
}
Kets five_bit_c1() {
  return {{-1, "00011"}, {1, "11111"}, {-1, "01000"}, {1, "10100"},
          {-1, "00110"}, {1, "11010"}, {1, "01101"},  {-1, "10001"}};
}

Outcome crossovers() {
  const double c3 = analytics::crossover_kT(3);
  const double c5 = analytics::crossover_kT(5);
  const bool ok = std::abs(c3 - std::log(2.0)) < 1e-9 && std::abs(c5 - 0.14) < 0.005;
  return {ok, "kappa_3 T = " + fmt("%.12f", c3) + " (ln 2 = " + fmt("%.12f", std::log(2.0)) + "), kappa_5 T = " +
                  fmt("%.6f", c5)};
}

Outcome worked_examples() {
  const double n3 = analytics::n_opt(3, 2e-5, 1e4, 10.0 / 1e4);
  const double f3 = analytics::max_failure(3, 2e-5, 1e4, 10.0 / 1e4);
  const double n5 = analytics::n_opt(5, 4e-5, 1e3, 20.0 / 1e3);
  const double f5 = analytics::max_failure(5, 4e-5, 1e3, 20.0 / 1e3);
  const bool ok = n3 >= 14.0 && n3 <= 14.2 && std::abs(f3 - 0.017) <= 0.001 && std::abs(n5 - 2.0) <= 0.01 &&
                  std::abs(f5 - 0.016) <= 0.001;
  return {ok, "n=3: n_opt " + g(n3) + ", failure " + g(f3) + "; n=5: n_opt " + g(n5) + ", failure " + g(f5)};
}

Outcome single_qubit_benchmark() {
  double worst = 0.0, worst_trace = 0.0;
  const double kappa = 0.01;
  for (NoiseKind kind : {NoiseKind::dephasing, NoiseKind::isotropic}) {
    for (double kT : {0.01, 0.1, 1.0}) {
      const EvolutionSegment seg{Operator::zero(1), kT / kappa, NoiseModel::of_kind(kind, 1, kappa), "idle"};
      MasterEquationSolver solver(DensityMatrix::pure(plus_state()));
      solver.advance(seg);
      const DensityMatrix rho = solver.state();
      worst = std::max(worst, std::abs(mismatch(rho, plus_state()) - analytics::m_nec_analytic(kind, kappa, kT / kappa)));
      worst_trace = std::max(worst_trace, std::abs(rho.trace() - 1.0));
    }
  }
  return {worst < 1e-6 && worst_trace < 1e-8,
          "max |m_nec - closed form| = " + g(worst) + ", max trace drift = " + g(worst_trace)};
}

Outcome codewords() {
  double worst_overlap = 1.0, worst_identity = 1.0;
  for (int n : {3, 5}) {
    const CodeSpec code = code_for(n);
    const Kets k0 = n == 3 ? three_bit_c0() : five_bit_c0();
    const Kets k1 = n == 3 ? three_bit_c1() : five_bit_c1();
    const Matrix u = code.encode.unitary().matrix();
    const StateVector e0(n, u * prepare_input(StateVector::basis(1, 0), code).amplitudes());
    const StateVector e1(n, u * prepare_input(StateVector::basis(1, 1), code).amplitudes());
    worst_overlap = std::min({worst_overlap, overlap_magnitude(e0, state_from_kets(k0)),
                              overlap_magnitude(e1, state_from_kets(k1))});
    const Matrix ud = code.decode.unitary().matrix() * u;
    const double id = std::abs(ud.trace()) / static_cast<double>(ud.rows());
    worst_identity = std::min(worst_identity, id);
  }
  return {worst_overlap >= 1.0 - 1e-9 && std::abs(worst_identity - 1.0) <= 1e-9,
          "min codeword overlap " + fmt("%.15f", worst_overlap) + ", min |tr(U_D U_E)|/2^n " +
              fmt("%.15f", worst_identity)};
}

Outcome single_error_correction() {
  double worst = 0.0;
  std::size_t cases = 0;
  for (int n : {3, 5}) {
    const CodeSpec code = code_for(n);
    for (const auto& e : code.correctable_errors()) {
      for (double t : {0.0, 1.5, 3.0}) {
        const PauliError errs[] = {e};
        worst = std::max(worst, injected_error_run(plus_state(), code, errs, t, 3.0));
        ++cases;
      }
    }
  }
  const CodeSpec five = five_qubit_code();
  const CorrectionTable table = derive_correction_table(five);
  std::set<unsigned> outcomes;
  for (const auto& entry : table.entries) outcomes.insert(entry.syndrome);
  const bool ok = worst < 1e-9 && table.distinct_syndromes() == 16 && outcomes.size() == 16;
  return {ok, std::to_string(cases) + " injected errors, max mismatch " + g(worst) + "; 5-bit distinct syndromes " +
                  std::to_string(table.distinct_syndromes())};
}

Outcome unraveling_equivalence() {
  const CodeSpec code = three_qubit_code();
  const Experiment ex{1e-3, 100.0, Scenario::storage, std::nullopt};
  const double master = protected_run(plus_state(), code, ex).mismatch;
  bool ok = true;
  std::ostringstream detail;
  detail << "master " << g(master);
  for (UnravelingKind u : {UnravelingKind::qsd, UnravelingKind::quantum_jumps}) {
    TrajectoryConfig cfg;
    cfg.n_trajectories = 400;
    cfg.master_seed = 1;
    cfg.unraveling = u;
    const RunResult r = protected_run(plus_state(), code, ex, RunMethod::ensemble(cfg));
    const double diff = std::abs(r.mismatch - master);
    ok = ok && diff <= 0.02 && diff <= 3.0 * r.standard_error;
    detail << "; " << unraveling_name(u) << " " << g(r.mismatch) << " +- " << g(r.standard_error) << " (|diff| "
           << g(diff) << ")";
  }
  return {ok, detail.str()};
}

Outcome analytic_vs_numerical() {
  const CodeSpec code = five_qubit_code();
  const std::vector<double> kappas{3e-4, 1e-3, 3e-3};
  const std::vector<double> times{40.0, 100.0, 300.0};
  std::vector<std::vector<double>> m_ec(kappas.size());
  parallel_for(kappas.size(), resolve_threads(0), [&](std::size_t k) {
    m_ec[k] = protected_run_series(plus_state(), code, kappas[k], times, Scenario::storage);
  });
  bool ok = true;
  double worst_rel = 0.0, worst_abs = 0.0;
  std::string where;
  std::size_t failing = 0;
  for (std::size_t k = 0; k < kappas.size(); ++k) {
    for (std::size_t j = 0; j < times.size(); ++j) {
      const double an = analytics::m_analytic(kappas[k], times[j], code.delta() / times[j]);
      const double diff = std::abs(m_ec[k][j] - an);
      const double rel = diff / std::max(an, 0.01);
      if (rel > 0.10) {
        ok = false;
        ++failing;
      }
      worst_abs = std::max(worst_abs, diff);
      if (rel > worst_rel) {
        worst_rel = rel;
        where = "kappa " + g(kappas[k]) + ", T " + g(times[j]) + ": m_ec " + g(m_ec[k][j]) + " vs m_analytic " + g(an);
      }
    }
  }
  return {ok, std::to_string(failing) + "/9 cells above 10%; worst relative " + g(worst_rel) + " at " + where +
                  "; worst absolute " + g(worst_abs)};
}

Outcome benefit_region() {
  const ExperimentConfig cfg = ExperimentConfig::sweep_defaults();
  std::ostringstream log;
  const SweepResult res = run_sweep(cfg, log);
  const CodeSpec code = cfg.code_spec();
  const double crossover = analytics::crossover_kT(code.n);
  const double spacing = cfg.times[1] - cfg.times[0];

  // Small kappa: the optimal interval stays below the crossover,
  // kappa_n t_opt < crossover. Moderate T: within one grid cell of t_opt.
  std::size_t predicted = 0, confirmed = 0, far = 0, far_negative = 0;
  for (const auto& r : res.records) {
    const double kn = code.kappa_n(r.kappa);
    const double topt = analytics::t_opt(code.n, kn, cfg.delta_time());
    if (kn * topt < crossover && std::abs(r.T - topt) <= spacing) {
      ++predicted;
      if (r.log_ratio && *r.log_ratio > 0.0) ++confirmed;
    }
    if (kn * r.T >= 10.0 * crossover) {
      ++far;
      if (r.log_ratio && *r.log_ratio < 0.0) ++far_negative;
    }
  }
  bool argmax_ok = true;
  std::ostringstream opt;
  for (const auto& o : res.optimum) {
    if (o.kappa > 1e-3 * (1.0 + 1e-12)) continue;
    const bool near = o.T_argmax && std::abs(*o.T_argmax - o.t_opt) <= spacing;
    argmax_ok = argmax_ok && near;
    opt << " " << g(o.kappa) << ":" << (o.T_argmax ? g(*o.T_argmax) : std::string("none")) << "/" << g(o.t_opt);
  }
  const bool ok = predicted > 0 && confirmed == predicted && far > 0 && far_negative == far && argmax_ok;
  std::ostringstream detail;
  detail << "log_ratio > 0 in " << confirmed << "/" << predicted << " small-kappa cells near t_opt; "
         << "log_ratio < 0 in " << far_negative << "/" << far << " cells with kappa_n T >= 10 x crossover; "
         << "argmax T / t_opt per kappa <= 1e-3:" << opt.str();
  return {ok, detail.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       ("noisyqec_determinism_" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  fs::create_directories(dir);
  struct Case {
    std::string name;
    std::vector<std::string> args;
    std::vector<std::string> suffixes;
  };
  const std::vector<Case> cases{
      {"master_csv",
       {"sweep", "--code", "3bit", "--kappa", "1e-4:1e-3:3", "--T", "20:60:3", "--seed", "7"},
       {".csv", "_topt.csv"}},
      {"master_json", {"sweep", "--code", "5bit", "--kappa", "1e-3,3e-3", "--T", "20,40", "--format", "json"}, {".json"}},
      {"qsd_csv",
       {"sweep", "--code", "3bit", "--method", "qsd", "--trajectories", "40", "--kappa", "1e-3", "--T", "20,40",
        "--seed", "11"},
       {".csv", "_topt.csv"}},
      {"jumps_csv",
       {"sweep", "--code", "3bit", "--method", "jumps", "--trajectories", "40", "--kappa", "2e-3", "--T", "30",
        "--seed", "5"},
       {".csv"}},
  };
  bool ok = true;
  std::size_t compared = 0;
  std::string failure;
  for (const auto& c : cases) {
    std::vector<std::string> contents;
    for (const char* threads : {"1", "4", "4"}) {
      const std::string stem = c.name + "_t" + threads + "_" + std::to_string(contents.size());
      const std::string ext = c.suffixes.front();
      std::vector<std::string> args = c.args;
      args.insert(args.end(), {"--threads", threads, "--output", (dir / (stem + ext)).string()});
      std::ostringstream out, err;
      if (run_cli(args, out, err) != kExitOk) {
        ok = false;
        failure = c.name + ": " + err.str();
        break;
      }
      std::string all;
      for (const auto& suffix : c.suffixes) {
        all += read_file(dir / (stem + suffix));
        all += '\x1f';
      }
      contents.push_back(std::move(all));
    }
    for (std::size_t k = 1; k < contents.size(); ++k) {
      ++compared;
      if (contents[k] != contents[0]) {
        ok = false;
        failure = c.name + " differs between runs";
      }
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return {ok, std::to_string(compared) + " output comparisons (threads 1, 4, 4)" +
                  (failure.empty() ? std::string(", all byte-identical") : "; " + failure)};
}

struct Criterion {
  const char* title;
  double budget_seconds;
  std::function<Outcome()> check;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"analytic crossovers", 1.0, crossovers},
      {"worked correction-count examples", 1.0, worked_examples},
      {"single-qubit master-equation benchmark", 10.0, single_qubit_benchmark},
      {"codeword construction", 5.0, codewords},
      {"single-error correction", 10.0, single_error_correction},
      {"unraveling equivalence", 300.0, unraveling_equivalence},
      {"analytic vs numerical mismatch", 600.0, analytic_vs_numerical},
      {"benefit region and optimum", 1800.0, benefit_region},
      {"sweep determinism", 1800.0, determinism},
  };
  return all;
}

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriteriaCount) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  const Criterion& c = criteria()[static_cast<std::size_t>(id - 1)];
  CriterionResult r;
  r.id = id;
  r.title = c.title;
  r.budget_seconds = c.budget_seconds;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = c.check();
    r.passed = o.passed;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds > r.budget_seconds) {
    r.passed = false;
    r.detail += "; runtime over budget";
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::ostream& out) {
  std::vector<CriterionResult> results;
  for (int id : ids) {
    CriterionResult r = run_criterion(id);
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.1f s of %.0f s", r.seconds, r.budget_seconds);
    out << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << "  " << r.title << "  [" << timing << "]  "
        << r.detail << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace noisyqec::cli

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

#include "noisyqec/cli/experiments.hpp"

#include <algorithm>

#include "noisyqec/analytics.hpp"
#include "noisyqec/parallel.hpp"

namespace noisyqec::cli {

namespace {

SweepRecord make_record(const ExperimentConfig& cfg, double kappa, double T, double m_nec,
                        std::optional<double> m_ec, std::optional<double> se) {
  SweepRecord r;
  r.kappa = kappa;
  r.T = T;
  r.m_nec = reported_mismatch(m_nec);
  if (m_ec) r.m_ec = reported_mismatch(*m_ec);
  r.m_analytic = analytic_mismatch(cfg, kappa, T);
  r.log_ratio = log_ratio(r.m_nec, r.m_ec);
  r.log_ratio_analytic = log_ratio(r.m_nec, r.m_analytic);
  r.standard_error = se;
  return r;
}

RunMethod method_for(const ExperimentConfig& cfg, std::size_t point_index) {
  if (cfg.method == Method::master) return RunMethod::master(cfg.dt);
  return RunMethod::ensemble(cfg.trajectory_config(point_index));
}

}  // namespace

double reported_mismatch(double m) { return m < kMismatchResolution ? 0.0 : std::min(m, 1.0); }

std::optional<double> analytic_mismatch(const ExperimentConfig& cfg, double kappa, double T) {
  const CodeSpec code = cfg.code_spec();
  const double kn = code.kappa_n(kappa);
  const double delta = cfg.delta_time() / T;
  if (cfg.scenario == Scenario::storage) {
    if (delta > 1.0) return std::nullopt;
    return analytics::m_analytic_code(code.n, kn, T, delta);
  }
  return 0.5 * (1.0 - analytics::t_sc(code.n, kn, kn, T, delta));
}

std::vector<SweepRecord> run_points(const ExperimentConfig& cfg) {
  cfg.validate();
  const CodeSpec code = cfg.code_spec();
  const std::size_t nt = cfg.times.size();
  const std::size_t count = cfg.kappas.size() * nt;
  std::vector<SweepRecord> out(count);
  auto point = [&](std::size_t i) {
    const double kappa = cfg.kappas[i / nt];
    const double T = cfg.times[i % nt];
    const double m_nec = unprotected_run(plus_state(), code.noise_kind, kappa, T, cfg.dt);
    if (cfg.single_qubit) {
      out[i] = make_record(cfg, kappa, T, m_nec, std::nullopt, std::nullopt);
      return;
    }
    const RunMethod method = method_for(cfg, i);
    const RunResult r = protected_run(plus_state(), code, {kappa, T, cfg.scenario, std::nullopt}, method);
    const auto se = cfg.method == Method::master ? std::nullopt : std::optional<double>(r.standard_error);
    out[i] = make_record(cfg, kappa, T, m_nec, r.mismatch, se);
  };
  if (cfg.method == Method::master || cfg.single_qubit) {
    parallel_for(count, resolve_threads(cfg.threads), point);
  } else {
    for (std::size_t i = 0; i < count; ++i) point(i);
  }
  return out;
}

SweepResult run_sweep(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  SweepResult result;
  const std::size_t count = cfg.kappas.size() * cfg.times.size();
  if (cfg.method != Method::master || cfg.single_qubit) {
    result.records = run_points(cfg);
  } else {
    if (count > kLargeGridPoints) {
      log << "warning: " << count << " master-equation grid points (more than " << kLargeGridPoints
          << "); this may take a long time\n";
    }
    const CodeSpec code = cfg.code_spec();
    const std::size_t nt = cfg.times.size();
    result.records.resize(count);
    parallel_for(cfg.kappas.size(), resolve_threads(cfg.threads), [&](std::size_t k) {
      const double kappa = cfg.kappas[k];
      const auto m_nec = unprotected_run_series(plus_state(), code.noise_kind, kappa, cfg.times, cfg.dt);
      const auto m_ec = protected_run_series(plus_state(), code, kappa, cfg.times, cfg.scenario, cfg.dt);
      for (std::size_t j = 0; j < nt; ++j) {
        result.records[k * nt + j] = make_record(cfg, kappa, cfg.times[j], m_nec[j], m_ec[j], std::nullopt);
      }
    });
  }
  result.optimum = optimum_curve(cfg, result.records);
  return result;
}

std::vector<OptimumRecord> optimum_curve(const ExperimentConfig& cfg, const std::vector<SweepRecord>& records) {
  const CodeSpec code = cfg.code_spec();
  std::vector<OptimumRecord> out;
  const std::size_t nt = cfg.times.size();
  for (std::size_t k = 0; k < cfg.kappas.size(); ++k) {
    OptimumRecord o;
    o.kappa = cfg.kappas[k];
    o.t_opt = analytics::t_opt(code.n, code.kappa_n(o.kappa), cfg.delta_time());
    for (std::size_t j = 0; j < nt; ++j) {
      const SweepRecord& r = records.at(k * nt + j);
      if (r.log_ratio && (!o.log_ratio_max || *r.log_ratio > *o.log_ratio_max)) {
        o.log_ratio_max = r.log_ratio;
        o.T_argmax = r.T;
      }
    }
    out.push_back(o);
  }
  return out;
}

}  // namespace noisyqec::cli

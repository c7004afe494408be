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

#include "noisyqec/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <random>

namespace noisyqec::cli {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(std::string_view text, std::string_view field) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw UsageError(std::string(field) + ": '" + t + "' is not a finite number");
  }
  return v;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::master:
      return "master";
    case Method::qsd:
      return "qsd";
    case Method::jumps:
      break;
  }
  return "jumps";
}

Method parse_method(std::string_view text) {
  const std::string t = lower(text);
  if (t == "master") return Method::master;
  if (t == "qsd") return Method::qsd;
  if (t == "jumps") return Method::jumps;
  throw UsageError("method: expected master, qsd or jumps, got '" + std::string(text) + "'");
}

Scenario parse_scenario(std::string_view text) {
  const std::string t = lower(text);
  if (t == "storage") return Scenario::storage;
  if (t == "transmission") return Scenario::transmission;
  throw UsageError("scenario: expected storage or transmission, got '" + std::string(text) + "'");
}

int parse_code(std::string_view text) {
  const std::string t = lower(text);
  if (t == "3" || t == "3bit") return 3;
  if (t == "5" || t == "5bit") return 5;
  throw UsageError("code: expected 3bit or 5bit, got '" + std::string(text) + "'");
}

OutputFormat parse_format(std::string_view text) {
  const std::string t = lower(text);
  if (t == "csv") return OutputFormat::csv;
  if (t == "json") return OutputFormat::json;
  throw UsageError("format: expected csv or json, got '" + std::string(text) + "'");
}

std::vector<double> parse_grid(std::string_view text, bool log_spaced, std::string_view field) {
  const std::string f(field);
  if (trim(text).empty()) throw UsageError(f + ": empty grid");
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError(f + ": a range is written lo:hi:count");
    const double lo = parse_number(parts[0], field);
    const double hi = parse_number(parts[1], field);
    const double count_d = parse_number(parts[2], field);
    if (count_d < 1.0 || count_d != std::floor(count_d) || count_d > 1e6) {
      throw UsageError(f + ": range count must be a positive integer");
    }
    const auto count = static_cast<std::size_t>(count_d);
    if (hi < lo) throw UsageError(f + ": range must have lo <= hi");
    if (log_spaced && lo <= 0.0) throw UsageError(f + ": log-spaced range needs lo > 0");
    if (count == 1) {
      if (lo != hi) throw UsageError(f + ": a single-point range needs lo == hi");
      return {lo};
    }
    std::vector<double> out(count);
    const double span = static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) {
      const double u = static_cast<double>(k) / span;
      out[k] = log_spaced ? lo * std::pow(hi / lo, u) : lo + static_cast<double>(k) * (hi - lo) / span;
    }
    out.front() = lo;
    out.back() = hi;
    return out;
  }
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_number(p, field));
  return out;
}

ExperimentConfig ExperimentConfig::sweep_defaults() {
  ExperimentConfig c;
  c.kappas = parse_grid("1e-4:1e-2:12", true, "kappa");
  c.times = parse_grid("20:500:25", false, "T");
  return c;
}

void ExperimentConfig::validate() const {
  if (code != 3 && code != 5) throw UsageError("code: expected 3bit or 5bit");
  if (kappas.empty()) throw UsageError("kappa: grid is empty");
  for (double k : kappas) {
    if (!(k >= 0.0) || !std::isfinite(k)) throw UsageError("kappa: values must be finite and non-negative");
  }
  if (times.empty()) throw UsageError("T: grid is empty");
  for (double t : times) {
    if (!(t > 0.0) || !std::isfinite(t)) throw UsageError("T: values must be finite and positive");
  }
  if (!std::is_sorted(times.begin(), times.end()) ||
      std::adjacent_find(times.begin(), times.end()) != times.end()) {
    throw UsageError("T: values must be strictly increasing");
  }
  if (Delta && !(*Delta > 0.0 && std::isfinite(*Delta))) throw UsageError("Delta: must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw UsageError("dt: must be positive");
  if (!(trajectory_dt > 0.0) || !std::isfinite(trajectory_dt)) throw UsageError("trajectory-dt: must be positive");
  if (n_trajectories == 0) throw UsageError("trajectories: must be positive");
  if (!single_qubit && scenario == Scenario::storage) {
    const double d = code_spec().delta();
    if (times.front() < d) {
      throw UsageError("T: storage runs need T >= " + std::to_string(d) + " (encoding plus decoding time)");
    }
  }
}

double ExperimentConfig::delta_time() const { return Delta.value_or(code_spec().delta()); }

TrajectoryConfig ExperimentConfig::trajectory_config(std::size_t point_index) const {
  TrajectoryConfig t;
  t.dt = trajectory_dt;
  t.n_trajectories = n_trajectories;
  t.master_seed = point_seed(seed, point_index);
  t.unraveling = method == Method::jumps ? UnravelingKind::quantum_jumps : UnravelingKind::qsd;
  t.threads = threads;
  return t;
}

std::uint64_t point_seed(std::uint64_t master_seed, std::size_t point_index) {
  const auto idx = static_cast<std::uint64_t>(point_index);
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32), 0x9017u};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[1]) << 32) | words[0];
}

}  // namespace noisyqec::cli

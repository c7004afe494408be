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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noisyqec/codes.hpp"
#include "noisyqec/errors.hpp"

namespace noisyqec::cli {

/// Bad command line or configuration value. Maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Method { master, qsd, jumps };
enum class OutputFormat { csv, json };

const char* method_name(Method m);
Method parse_method(std::string_view text);
Scenario parse_scenario(std::string_view text);
/// Accepts "3", "5", "3bit" or "5bit".
int parse_code(std::string_view text);
OutputFormat parse_format(std::string_view text);

/// Parses "a,b,c" or a range "lo:hi:count". Ranges are log-spaced when
/// `log_spaced` is set and linear otherwise; both end points are exact.
std::vector<double> parse_grid(std::string_view text, bool log_spaced, std::string_view field);

struct ExperimentConfig {
  int code = 5;
  Scenario scenario = Scenario::storage;
  Method method = Method::master;
  std::vector<double> kappas;
  std::vector<double> times;  // total time T, E+D included
  std::optional<double> Delta;  // analytic columns only; defaults to the schedule length
  double dt = kDefaultMasterStep;
  double trajectory_dt = kDefaultTrajectoryStep;
  std::size_t n_trajectories = 400;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool single_qubit = false;  // skip the protected run
  std::string output;         // empty: standard output
  OutputFormat format = OutputFormat::csv;

  /// kappa log-spaced 1e-4..1e-2 (12 points), T linear 20..500 (25 points).
  static ExperimentConfig sweep_defaults();

  /// Throws UsageError naming the offending field.
  void validate() const;
  CodeSpec code_spec() const { return code_for(code); }
  /// E+D time used by the analytic columns.
  double delta_time() const;
  /// Trajectory settings for the grid point with the given index.
  TrajectoryConfig trajectory_config(std::size_t point_index) const;
};

/// Seed for one grid point, derived from the master seed and the point index.
std::uint64_t point_seed(std::uint64_t master_seed, std::size_t point_index);

}  // namespace noisyqec::cli

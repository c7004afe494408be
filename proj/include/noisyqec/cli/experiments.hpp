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

#include <optional>
#include <ostream>
#include <vector>

#include "noisyqec/cli/config.hpp"
#include "noisyqec/cli/records.hpp"

namespace noisyqec::cli {

/// Mismatches below this are double-precision roundoff and reported as 0.
inline constexpr double kMismatchResolution = 1e-12;

/// Snaps roundoff to 0 and clamps to [0, 1].
double reported_mismatch(double m);

/// Grid sizes above this many master-equation points print a warning.
inline constexpr std::size_t kLargeGridPoints = 10000;

/// Closed-form estimate for the configured code and scenario at (kappa, T);
/// empty when E+D does not fit into a storage run.
std::optional<double> analytic_mismatch(const ExperimentConfig& cfg, double kappa, double T);

/// Runs every (kappa, T) point independently, kappa-major. Master-equation
/// points are spread over worker threads; trajectory ensembles use the
/// workers internally.
std::vector<SweepRecord> run_points(const ExperimentConfig& cfg);

/// The full grid plus the per-kappa optimum. Master-equation rows share one
/// integration per kappa. Warnings go to `log`.
SweepResult run_sweep(const ExperimentConfig& cfg, std::ostream& log);

/// Argmax of m_nec / m_ec over T for each kappa, with the closed-form t_opt.
std::vector<OptimumRecord> optimum_curve(const ExperimentConfig& cfg, const std::vector<SweepRecord>& records);

}  // namespace noisyqec::cli

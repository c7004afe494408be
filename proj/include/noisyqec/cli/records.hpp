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
#include <string>
#include <vector>

namespace noisyqec::cli {

/// One (kappa, T) grid point. Empty optionals are written as empty CSV
/// fields and JSON nulls.
struct SweepRecord {
  double kappa = 0.0;
  double T = 0.0;
  double m_nec = 0.0;
  std::optional<double> m_ec;
  std::optional<double> m_analytic;
  std::optional<double> log_ratio;           // ln(m_nec / m_ec)
  std::optional<double> log_ratio_analytic;  // ln(m_nec / m_analytic)
  std::optional<double> standard_error;      // trajectory methods only
};

/// Per-kappa location of the largest m_nec / m_ec on the T grid next to the
/// closed-form optimum.
struct OptimumRecord {
  double kappa = 0.0;
  std::optional<double> T_argmax;
  std::optional<double> log_ratio_max;
  double t_opt = 0.0;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<OptimumRecord> optimum;
};

inline constexpr const char* kRecordHeader = "kappa,T,m_nec,m_ec,m_analytic,log_ratio,log_ratio_analytic,stderr";
inline constexpr const char* kOptimumHeader = "kappa,T_argmax,log_ratio_max,t_opt";

/// ln(num / den) when both are positive and the result is finite.
std::optional<double> log_ratio(double num, std::optional<double> den);

/// %.17g; infinities written as "inf" or "-inf".
std::string format_double(double v);

void write_records_csv(std::ostream& out, const std::vector<SweepRecord>& records);
void write_optimum_csv(std::ostream& out, const std::vector<OptimumRecord>& optimum);
/// {"records": [...]} plus "optimum" when `with_optimum` is set.
std::string to_json(const SweepResult& result, bool with_optimum);

}  // namespace noisyqec::cli

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

#include "noisyqec/cli/records.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace noisyqec::cli {

namespace {

std::string field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

nlohmann::ordered_json json_value(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

// Infinite t_opt (kappa = 0) is written as an empty field.
std::optional<double> finite(double v) {
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

std::optional<double> log_ratio(double num, std::optional<double> den) {
  if (!den || !(num > 0.0) || !(*den > 0.0)) return std::nullopt;
  const double r = std::log(num / *den);
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_records_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    out << format_double(r.kappa) << ',' << format_double(r.T) << ',' << format_double(r.m_nec) << ','
        << field(r.m_ec) << ',' << field(r.m_analytic) << ',' << field(r.log_ratio) << ','
        << field(r.log_ratio_analytic) << ',' << field(r.standard_error) << '\n';
  }
}

void write_optimum_csv(std::ostream& out, const std::vector<OptimumRecord>& optimum) {
  out << kOptimumHeader << '\n';
  for (const auto& o : optimum) {
    out << format_double(o.kappa) << ',' << field(o.T_argmax) << ',' << field(o.log_ratio_max) << ','
        << field(finite(o.t_opt)) << '\n';
  }
}

std::string to_json(const SweepResult& result, bool with_optimum) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& r : result.records) {
    records.push_back({{"kappa", r.kappa},
                       {"T", r.T},
                       {"m_nec", r.m_nec},
                       {"m_ec", json_value(r.m_ec)},
                       {"m_analytic", json_value(r.m_analytic)},
                       {"log_ratio", json_value(r.log_ratio)},
                       {"log_ratio_analytic", json_value(r.log_ratio_analytic)},
                       {"stderr", json_value(r.standard_error)}});
  }
  nlohmann::ordered_json doc;
  doc["records"] = records;
  if (with_optimum) {
    nlohmann::ordered_json opt = nlohmann::ordered_json::array();
    for (const auto& o : result.optimum) {
      opt.push_back({{"kappa", o.kappa},
                     {"T_argmax", json_value(o.T_argmax)},
                     {"log_ratio_max", json_value(o.log_ratio_max)},
                     {"t_opt", json_value(finite(o.t_opt))}});
    }
    doc["optimum"] = opt;
  }
  return doc.dump(2) + "\n";
}

}  // namespace noisyqec::cli

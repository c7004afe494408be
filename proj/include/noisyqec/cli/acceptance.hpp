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

#include <ostream>
#include <string>
#include <vector>

namespace noisyqec::cli {

inline constexpr int kCriteriaCount = 9;
/// `selftest` runs criteria 1 through kSelftestCriteria.
inline constexpr int kSelftestCriteria = 5;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

/// Runs one criterion; exceptions count as failures.
CriterionResult run_criterion(int id);

/// Runs the criteria in order and prints one "PASS" or "FAIL" line for each
/// as it finishes.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::ostream& out);

}  // namespace noisyqec::cli

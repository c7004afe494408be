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

// Runs the acceptance criteria (all, or those named on the command line) and
// prints one PASS/FAIL line per criterion. Exits nonzero on any failure.

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "noisyqec/cli/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int k = 1; k < argc; ++k) ids.push_back(std::stoi(argv[k]));
  if (ids.empty()) {
    for (int k = 1; k <= noisyqec::cli::kCriteriaCount; ++k) ids.push_back(k);
  }
  const auto results = noisyqec::cli::run_acceptance(ids, std::cout);
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  std::cout << "acceptance: " << passed << "/" << results.size() << " criteria passed" << std::endl;
  return passed == static_cast<long>(results.size()) ? 0 : 1;
}

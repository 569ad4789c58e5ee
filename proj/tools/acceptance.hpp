// Copyright 2026 The msgate Authors
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
#include <string>
#include <vector>

namespace msgate::cli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  bool known_deviation = false;  // documented as not attainable; FAIL does not break the suite
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240607;
  int jobs = 1;
  int ensemble = 200;        // Monte-Carlo trajectories per point
  int optimizer_starts = 20;
  std::vector<int> only;     // empty: all criteria
  std::string out_dir;       // figure data is written here when non-empty
  std::string config_hash;   // recorded in every CSV header
};

/// Criteria whose FAIL is expected and explained in the README.
bool is_known_deviation(int id);

/// Runs the acceptance criteria in order, calling `report` after each one.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            void (*report)(const CriterionResult&) = nullptr);

std::string format_result(const CriterionResult& r);

}  // namespace msgate::cli

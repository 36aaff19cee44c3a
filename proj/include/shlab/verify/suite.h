// Copyright 2026 The Shtarkov Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHLAB_VERIFY_SUITE_H_
#define SHLAB_VERIFY_SUITE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "shlab/core/errors.h"
#include "shlab/io/class_spec.h"

namespace shlab::verify {

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::uint64_t budget_trees = kDefaultBudget;  // tree enumerations
  std::uint64_t budget_seqs = kDefaultBudget;   // sequence and path enumerations
  std::uint64_t budget_grid = 100'000'000;      // simplex-lattice game nodes
  double tolerance = 1e-9;                      // equality checks
};

enum class Status { kPass, kFail, kSkipped };

const char* status_name(Status s);

struct SuiteEntry {
  std::string key;
  Status status = Status::kPass;
  std::uint64_t cases = 0;  // individual comparisons made
  double max_error = 0.0;   // largest deviation seen on equality checks
  std::string detail;       // first failure, or the budget that was hit
};

struct SuiteReport {
  std::vector<SuiteEntry> entries;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
};

// Keys, in report order.
const std::vector<std::string>& suite_keys();

// Runs every entry sequentially. An entry whose enumeration would exceed a
// budget is marked skipped; any other exception is a failure.
SuiteReport run_suite(const SuiteConfig& config);

// {"matrix": [...], "passed", "failed", "skipped"}.
io::Json to_json(const SuiteReport& report);

}  // namespace shlab::verify

#endif  // SHLAB_VERIFY_SUITE_H_

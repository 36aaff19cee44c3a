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

#ifndef SHLAB_CLI_APP_H_
#define SHLAB_CLI_APP_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shlab/core/errors.h"
#include "shlab/io/class_spec.h"

namespace shlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,     // a verify check failed, or an unexpected error
  kExitValidation = 2,  // bad arguments or input documents
  kExitBudget = 3,      // an enumeration budget was exhausted
};

enum class OutputFormat { kJson, kTable };

struct RunConfig {
  std::string command;  // e.g. "game solve"
  std::string spec_path;
  std::optional<int> horizon;
  std::uint64_t seed = 0;
  std::uint64_t budget_trees = kDefaultBudget;
  std::uint64_t budget_seqs = kDefaultBudget;
  std::uint64_t budget_grid = 100'000'000;
  std::optional<double> grid;  // simplex-lattice step for game solve
  OutputFormat out = OutputFormat::kJson;
  double tolerance = 1e-9;
  bool timing = false;

  // Command-specific inputs.
  std::string tree_path;
  std::string prefix_path;
  std::string constraint_path;
  std::string measures_path;
  std::vector<int> contexts;
  std::uint64_t samples = 100'000;
  std::string adversary = "worstcase";
  std::string forecaster = "cnml";
  std::vector<double> alphas;
  std::vector<double> deltas;
  std::optional<int> dim;
  std::optional<int> max_depth;
  bool strict = false;
};

// Throws ValidationError when a budget or tolerance is not positive.
void validate_config(const RunConfig& config);

// Applies SHTARKOV_LAB_BUDGET: every budget is capped at the value. An
// empty or null value leaves the config unchanged.
void apply_budget_ceiling(RunConfig& config, const char* env_value);

struct RunOutput {
  int exit_code = kExitOk;
  std::string out;  // the report; empty unless the command produced one
  std::string err;  // diagnostics
};

// Runs a parsed configuration. Exceptions map to exit codes and leave `out`
// empty.
RunOutput run(const RunConfig& config);

// Full command line without the program name. `env_budget` is the value of
// SHTARKOV_LAB_BUDGET, or null.
RunOutput run_cli(const std::vector<std::string>& args, const char* env_budget = nullptr);

}  // namespace shlab::cli

#endif  // SHLAB_CLI_APP_H_

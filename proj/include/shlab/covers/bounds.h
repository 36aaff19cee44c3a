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


#ifndef SHLAB_COVERS_BOUNDS_H_
#define SHLAB_COVERS_BOUNDS_H_

#include <optional>
#include <vector>

#include "shlab/covers/covers.h"

namespace shlab {

// (2 - log 2) / (log 3 - log 2).
double cover_bound_constant();

struct BoundEntry {
  double alpha = 0.0;
  double h_inf = 0.0;
  double h_global = 0.0;
  int fat_dimension = 0;      // strict fat dimension at scale 2 alpha, capped at T
  double fat_lower = 0.0;     // min(T, fat) log 2
  bool fat_check_holds = false;
  double entropy_bound = 0.0;        // T log(1 + 2 alpha) + h_inf
  double lipschitz_bound = 0.0;      // 4 T alpha + c h_inf
  double global_bound = 0.0;         // T log(1 + 2 alpha) + h_global
};

struct BoundChoice {
  double alpha = 0.0;
  double value = 0.0;
};

struct BoundReport {
  int horizon = 0;
  double c = 0.0;
  double log_class_size = 0.0;
  std::vector<BoundEntry> entries;
  std::optional<double> exact_regret;  // worst-case Shtarkov value when computable
  BoundChoice best_entropy;
  BoundChoice best_lipschitz;
  BoundChoice best_global;
  bool all_bounds_valid = true;   // every bound >= exact regret - 1e-9
  bool global_dominates = true;   // h_inf <= h_global on every entry
  bool fat_checks_hold = true;
};

BoundReport entropy_regret_bounds(const RealFunctionClass& cls, int horizon,
                                  const std::vector<double>& alpha_grid,
                                  std::uint64_t tree_budget = kDefaultBudget,
                                  std::uint64_t budget = kDefaultCoverBudget);

}  // namespace shlab

#endif  // SHLAB_COVERS_BOUNDS_H_

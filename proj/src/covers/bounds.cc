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


#include "shlab/covers/bounds.h"

#include <algorithm>
#include <cmath>

#include "shlab/shtarkov/worst_case.h"

namespace shlab {

double cover_bound_constant() {
  return (2.0 - std::log(2.0)) / (std::log(3.0) - std::log(2.0));
}

namespace {

void keep_min(BoundChoice& best, bool first, double alpha, double value) {
  if (first || value < best.value) best = {alpha, value};
}

}  // namespace

BoundReport entropy_regret_bounds(const RealFunctionClass& cls, int horizon,
                                  const std::vector<double>& alpha_grid,
                                  std::uint64_t tree_budget, std::uint64_t budget) {
  if (horizon < 1) throw ValidationError("bounds need horizon >= 1");
  if (alpha_grid.empty()) throw ValidationError("alpha grid is empty");
  BoundReport r;
  r.horizon = horizon;
  r.c = cover_bound_constant();
  r.log_class_size = std::log(static_cast<double>(cls.size()));
  try {
    r.exact_regret = worst_case_shtarkov(cls.to_class(), horizon).value.log();
  } catch (const BudgetExceeded&) {
    r.exact_regret.reset();
  }
  const double T = static_cast<double>(horizon);
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    const double alpha = alpha_grid[i];
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be > 0");
    BoundEntry e;
    e.alpha = alpha;
    e.h_inf = sequential_entropy(cls, alpha, horizon, tree_budget, budget).entropy;
    e.h_global = global_entropy(cls, alpha, horizon, budget).entropy;
    e.fat_dimension = fat_shattering_dim(cls, 2.0 * alpha, horizon, true, budget).dimension;
    e.fat_lower = std::min(horizon, e.fat_dimension) * std::log(2.0);
    e.fat_check_holds = e.h_inf >= e.fat_lower - 1e-12;
    e.entropy_bound = T * std::log1p(2.0 * alpha) + e.h_inf;
    e.lipschitz_bound = 4.0 * T * alpha + r.c * e.h_inf;
    e.global_bound = T * std::log1p(2.0 * alpha) + e.h_global;
    keep_min(r.best_entropy, i == 0, alpha, e.entropy_bound);
    keep_min(r.best_lipschitz, i == 0, alpha, e.lipschitz_bound);
    keep_min(r.best_global, i == 0, alpha, e.global_bound);
    r.global_dominates = r.global_dominates && e.h_inf <= e.h_global + 1e-12;
    r.fat_checks_hold = r.fat_checks_hold && e.fat_check_holds;
    if (r.exact_regret) {
      const double floor = *r.exact_regret - 1e-9;
      r.all_bounds_valid = r.all_bounds_valid && e.entropy_bound >= floor &&
                           e.lipschitz_bound >= floor && e.global_bound >= floor;
    }
    r.entries.push_back(e);
  }
  if (r.exact_regret) {
    r.all_bounds_valid = r.all_bounds_valid && r.log_class_size >= *r.exact_regret - 1e-9;
  }
  return r;
}

}  // namespace shlab

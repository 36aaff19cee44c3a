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


#ifndef SHLAB_GAME_GAME_H_
#define SHLAB_GAME_GAME_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "shlab/core/context_tree.h"
#include "shlab/core/errors.h"
#include "shlab/core/hypothesis_class.h"
#include "shlab/shtarkov/constraint.h"

namespace shlab {

// Backward induction of the regret game. Explicit classes carry every
// expert's cumulative log-likelihood down the game tree and score a leaf by
// the best of them; oracle classes query the oracle at the leaf. The
// learner's infimum at each node is evaluated at p* = softmax(G) as
// max_{y : G(y) > -inf} [-log p*(y) + G(y)]. Throws BudgetExceeded when
// (|X| K)^T > budget.
double minimax_regret_exact(const HypothesisClass& cls, int horizon,
                            const ContextConstraint& constraint = {},
                            std::uint64_t budget = kDefaultBudget);

// Same game with the learner restricted to the simplex lattice of step h
// (1/h must be an integer within 1e-9, 0 < h <= 0.1). An upper bound on the
// exact value. Budget: lattice size times internal nodes.
double minimax_regret_grid(const HypothesisClass& cls, int horizon, double h,
                           const ContextConstraint& constraint = {},
                           std::uint64_t budget = 100'000'000);

// Number of lattice points {p = h n, n in N^K, sum n = 1/h}.
std::uint64_t simplex_lattice_size(int labels, int steps);

struct DualGameResult {
  double value = 0.0;  // log of the maximal linear-domain sum
  ContextTree tree;    // argmax tree, lowest context on ties
  std::vector<double> path_scores;  // F_x(y) on the argmax tree, path_code order
  std::vector<double> distribution;  // P* = softmax(F_x)
  double entropy = 0.0;              // H(P*)
  double expected_score = 0.0;       // E_{P*}[F_x]
};

// sup over trees of log sum_y exp(F_x(y)), computed by a linear-domain
// recursion with compensated sums, independent of the log-domain solver.
DualGameResult dual_game_value(const HypothesisClass& cls, int horizon,
                               const ContextConstraint& constraint = {},
                               std::uint64_t budget = kDefaultBudget);

struct FixedDesignResult {
  double value = 0.0;
  std::vector<int> contexts;  // first maximizing sequence
};

// max over x_{1:T} of the conditional sum; throws BudgetExceeded when
// |X|^T > budget.
FixedDesignResult fixed_design_value(const HypothesisClass& cls, int horizon,
                                     std::uint64_t budget = kDefaultBudget);

struct GameValueReport {
  double primal_value = 0.0;
  double dual_value = 0.0;
  double worstcase_shtarkov = 0.0;
  std::optional<double> grid_value;
  double max_abs_gap = 0.0;
};

GameValueReport solve_game(const HypothesisClass& cls, int horizon,
                           std::optional<double> grid = std::nullopt,
                           const ContextConstraint& constraint = {},
                           std::uint64_t budget = kDefaultBudget,
                           std::uint64_t grid_budget = 100'000'000);

}  // namespace shlab

#endif  // SHLAB_GAME_GAME_H_

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


#ifndef SHLAB_SHTARKOV_WORST_CASE_H_
#define SHLAB_SHTARKOV_WORST_CASE_H_

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "shlab/core/context_tree.h"
#include "shlab/core/errors.h"
#include "shlab/core/history.h"
#include "shlab/core/hypothesis_class.h"
#include "shlab/core/log_value.h"
#include "shlab/shtarkov/constraint.h"

namespace shlab {

inline constexpr std::uint64_t kDefaultStateBudget = 10'000'000;

// Memoized backward recursion
//   V(h) = max_{x allowed} log sum_y exp V(h x y),  V(leaf) = sup log-likelihood
// over complete histories h of length <= horizon. The memo depends only on
// (class, horizon, constraint), so one solver can serve many queries.
class WorstCaseSolver {
 public:
  WorstCaseSolver(HypothesisClass cls, int horizon, ContextConstraint constraint = {},
                  std::uint64_t budget = kDefaultStateBudget);

  const HypothesisClass& hypothesis_class() const { return cls_; }
  int horizon() const { return horizon_; }
  const ContextConstraint& constraint() const { return constraint_; }

  // V at a complete prefix of length <= horizon.
  LogValue value(const Prefix& prefix);

  // Lowest maximizing context at a complete prefix of length < horizon.
  int best_context(const Prefix& prefix);

  // The argmax tree of depth horizon - t below `prefix`.
  ContextTree witness_tree(const Prefix& prefix);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  double solve(std::vector<int>& ctx, std::vector<int>& lab);
  double child_sum(std::vector<int>& ctx, std::vector<int>& lab, int x);
  std::uint64_t key(const std::vector<int>& ctx, const std::vector<int>& lab) const;
  void check_prefix(const Prefix& prefix) const;

  HypothesisClass cls_;
  int horizon_;
  ContextConstraint constraint_;
  std::uint64_t budget_ = kDefaultStateBudget;
  std::vector<std::uint64_t> level_offsets_;
  std::unordered_map<std::uint64_t, double> memo_;
};

struct WorstCaseResult {
  LogValue value;
  ContextTree tree;
};

WorstCaseResult worst_case_shtarkov(const HypothesisClass& cls, int horizon,
                                    const Prefix& prefix = {},
                                    const ContextConstraint& constraint = {},
                                    std::uint64_t budget = kDefaultStateBudget);

struct BruteForceResult {
  LogValue value;
  ContextTree tree;
  std::uint64_t trees_enumerated = 0;  // all trees in the mixed-radix order
  std::uint64_t trees_consistent = 0;  // those admitted by the constraint
};

// Enumerates every tree of depth horizon - t (node 0 most significant digit),
// evaluates the prefix sum on the admissible ones and keeps the first argmax.
// Throws BudgetExceeded when |X|^{nodes} > budget.
BruteForceResult worst_case_shtarkov_bruteforce(const HypothesisClass& cls, int horizon,
                                                const ContextConstraint& constraint = {},
                                                const Prefix& prefix = {},
                                                std::uint64_t budget = kDefaultBudget);

// Number of trees of the given depth over |X| contexts, saturating.
std::uint64_t tree_count(int contexts, int labels, int depth);

}  // namespace shlab

#endif  // SHLAB_SHTARKOV_WORST_CASE_H_

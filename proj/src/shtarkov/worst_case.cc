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


#include "shlab/shtarkov/worst_case.h"

#include <sstream>

#include "shlab/kernels/kernels.h"
#include "shlab/shtarkov/sums.h"

namespace shlab {

std::uint64_t tree_count(int contexts, int labels, int depth) {
  std::uint64_t nodes = 0;
  std::uint64_t level = 1;
  for (int t = 0; t < depth; ++t) {
    nodes = saturating_add(nodes, level);
    level = saturating_mul(level, static_cast<std::uint64_t>(labels));
  }
  if (nodes > 64 * 64) return contexts <= 1 ? 1 : std::numeric_limits<std::uint64_t>::max();
  return saturating_pow(static_cast<std::uint64_t>(contexts), static_cast<int>(nodes));
}

namespace {

std::uint64_t subtree_states(int contexts, int labels, int depth) {
  const std::uint64_t step = saturating_mul(static_cast<std::uint64_t>(contexts),
                                            static_cast<std::uint64_t>(labels));
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (int s = 0; s <= depth; ++s) {
    total = saturating_add(total, level);
    level = saturating_mul(level, step);
  }
  return total;
}

}  // namespace

WorstCaseSolver::WorstCaseSolver(HypothesisClass cls, int horizon, ContextConstraint constraint,
                                 std::uint64_t budget)
    : cls_(std::move(cls)), horizon_(horizon), constraint_(std::move(constraint)) {
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  full_context_mask(cls_.contexts());
  const std::uint64_t total = subtree_states(cls_.contexts(), cls_.labels(), horizon);
  if (total >= (std::uint64_t{1} << 62)) throw BudgetExceeded("history key space", total, budget);
  const std::uint64_t step = static_cast<std::uint64_t>(cls_.contexts() * cls_.labels());
  level_offsets_.assign(static_cast<std::size_t>(horizon) + 2, 0);
  std::uint64_t level = 1;
  for (int t = 0; t <= horizon; ++t) {
    level_offsets_[static_cast<std::size_t>(t) + 1] = level_offsets_[static_cast<std::size_t>(t)] + level;
    level *= step;
  }
  budget_ = budget;
}

std::uint64_t WorstCaseSolver::key(const std::vector<int>& ctx, const std::vector<int>& lab) const {
  std::uint64_t code = 0;
  const std::uint64_t K = static_cast<std::uint64_t>(cls_.labels());
  const std::uint64_t step = static_cast<std::uint64_t>(cls_.contexts()) * K;
  for (std::size_t s = 0; s < ctx.size(); ++s) {
    code = code * step + static_cast<std::uint64_t>(ctx[s]) * K + static_cast<std::uint64_t>(lab[s]);
  }
  return level_offsets_[ctx.size()] + code;
}

void WorstCaseSolver::check_prefix(const Prefix& prefix) const {
  if (!prefix.complete()) throw ValidationError("worst-case prefix must be complete");
  if (prefix.length() > static_cast<std::size_t>(horizon_)) {
    throw ValidationError("prefix longer than the horizon");
  }
  prefix.validate(cls_.labels(), cls_.contexts());
}

double WorstCaseSolver::child_sum(std::vector<int>& ctx, std::vector<int>& lab, int x) {
  double vals[64];
  std::vector<double> big;
  const int K = cls_.labels();
  double* out = vals;
  if (K > 64) {
    big.resize(static_cast<std::size_t>(K));
    out = big.data();
  }
  ctx.push_back(x);
  for (int y = 0; y < K; ++y) {
    lab.push_back(y);
    out[y] = solve(ctx, lab);
    lab.pop_back();
  }
  ctx.pop_back();
  return kernels::log_sum_exp(std::span<const double>(out, static_cast<std::size_t>(K)));
}

double WorstCaseSolver::solve(std::vector<int>& ctx, std::vector<int>& lab) {
  if (lab.size() == static_cast<std::size_t>(horizon_)) {
    return cls_.sup_log_likelihood(ctx, lab).value.log();
  }
  const std::uint64_t k = key(ctx, lab);
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  const std::uint64_t mask = constraint_.allowed(ctx, lab, cls_.contexts());
  bool first = true;
  double best = kNegInf;
  for (int x = 0; x < cls_.contexts(); ++x) {
    if (!((mask >> x) & 1U)) continue;
    const double v = child_sum(ctx, lab, x);
    if (first || v > best) {
      best = v;
      first = false;
    }
  }
  memo_.emplace(k, best);
  return best;
}

LogValue WorstCaseSolver::value(const Prefix& prefix) {
  check_prefix(prefix);
  const int remaining = horizon_ - static_cast<int>(prefix.length());
  require_budget("worst-case recursion states",
                 subtree_states(cls_.contexts(), cls_.labels(), remaining), budget_);
  std::vector<int> ctx = prefix.contexts();
  std::vector<int> lab = prefix.labels();
  return LogValue::from_log(solve(ctx, lab));
}

int WorstCaseSolver::best_context(const Prefix& prefix) {
  check_prefix(prefix);
  if (prefix.length() == static_cast<std::size_t>(horizon_)) {
    throw ValidationError("no context to choose after the last round");
  }
  value(prefix);
  std::vector<int> ctx = prefix.contexts();
  std::vector<int> lab = prefix.labels();
  const std::uint64_t mask = constraint_.allowed(ctx, lab, cls_.contexts());
  int arg = -1;
  double best = kNegInf;
  for (int x = 0; x < cls_.contexts(); ++x) {
    if (!((mask >> x) & 1U)) continue;
    const double v = child_sum(ctx, lab, x);
    if (arg < 0 || v > best) {
      best = v;
      arg = x;
    }
  }
  return arg;
}

ContextTree WorstCaseSolver::witness_tree(const Prefix& prefix) {
  check_prefix(prefix);
  const int depth = horizon_ - static_cast<int>(prefix.length());
  const int K = cls_.labels();
  std::vector<int> nodes(ContextTree::node_count(K, depth), 0);
  // Breadth-first: the contexts along a path are fixed before its children.
  std::vector<int> path;
  for (int s = 0; s < depth; ++s) {
    const std::size_t base = ContextTree::level_offset(K, s);
    const std::size_t count = path_count(K, s);
    path.assign(static_cast<std::size_t>(s), 0);
    for (std::size_t code = 0; code < count; ++code) {
      decode_path(code, K, path);
      std::vector<int> ctx = prefix.contexts();
      std::vector<int> lab = prefix.labels();
      std::size_t off = 0;
      std::size_t level = 1;
      std::size_t sub = 0;
      for (int r = 0; r < s; ++r) {
        ctx.push_back(nodes[off + sub]);
        lab.push_back(path[static_cast<std::size_t>(r)]);
        off += level;
        level *= static_cast<std::size_t>(K);
        sub = sub * static_cast<std::size_t>(K) + static_cast<std::size_t>(path[static_cast<std::size_t>(r)]);
      }
      nodes[base + code] = best_context(Prefix(std::move(ctx), std::move(lab)));
    }
  }
  return ContextTree(K, depth, std::move(nodes));
}

WorstCaseResult worst_case_shtarkov(const HypothesisClass& cls, int horizon, const Prefix& prefix,
                                    const ContextConstraint& constraint, std::uint64_t budget) {
  WorstCaseSolver solver(cls, horizon, constraint, budget);
  WorstCaseResult r;
  r.value = solver.value(prefix);
  r.tree = solver.witness_tree(prefix);
  return r;
}

BruteForceResult worst_case_shtarkov_bruteforce(const HypothesisClass& cls, int horizon,
                                                const ContextConstraint& constraint,
                                                const Prefix& prefix, std::uint64_t budget) {
  if (!prefix.complete()) throw ValidationError("worst-case prefix must be complete");
  if (prefix.length() > static_cast<std::size_t>(horizon)) {
    throw ValidationError("prefix longer than the horizon");
  }
  const int K = cls.labels();
  const int X = cls.contexts();
  const int depth = horizon - static_cast<int>(prefix.length());
  const std::uint64_t total = tree_count(X, K, depth);
  require_budget("context tree enumeration", total, budget);
  const std::size_t n = ContextTree::node_count(K, depth);
  std::vector<int> digits(n, 0);
  BruteForceResult best;
  bool found = false;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (i > 0) {
      std::size_t d = n;
      while (d-- > 0) {
        if (++digits[d] < X) break;
        digits[d] = 0;
      }
    }
    ++best.trees_enumerated;
    ContextTree tree(K, depth, digits);
    if (!constraint.unconstrained() && !constraint.admits(tree, prefix, X)) continue;
    ++best.trees_consistent;
    const LogValue v = LogValue::from_log(kernels::log_sum_exp(path_sup_values(cls, tree, prefix)));
    if (!found || v > best.value) {
      best.value = v;
      best.tree = std::move(tree);
      found = true;
    }
  }
  if (!found) throw ValidationError("no context tree is consistent with the constraint");
  return best;
}

}  // namespace shlab

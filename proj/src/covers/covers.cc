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


#include "shlab/covers/covers.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <sstream>
#include <string>
#include <unordered_map>

#include "shlab/core/history.h"

namespace shlab {

namespace {

std::uint64_t full_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

double checked_unit(double v, const char* what) {
  if (!std::isfinite(v)) throw ValidationError(std::string(what) + " holds a non-finite value");
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

// ---------------------------------------------------------------------------
// Value types

RealFunctionClass::RealFunctionClass(std::vector<std::vector<double>> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("function class needs at least one function");
  if (values_.size() > 64) throw ValidationError("cover machinery supports at most 64 functions");
  contexts_ = static_cast<int>(values_.front().size());
  if (contexts_ < 1) throw ValidationError("functions need at least one context");
  for (std::size_t f = 0; f < values_.size(); ++f) {
    if (values_[f].size() != static_cast<std::size_t>(contexts_)) {
      throw ValidationError("functions are defined on different context sets");
    }
    for (std::size_t x = 0; x < values_[f].size(); ++x) {
      const double v = values_[f][x];
      if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << "function " << f << " at context " << x << " = " << v << " is outside [0, 1]";
        throw ValidationError(os.str());
      }
    }
  }
}

RealFunctionClass RealFunctionClass::from_class(const HypothesisClass& cls) {
  if (!cls.is_explicit()) {
    throw ValidationError("cover operations need an explicit class; '" + cls.name() +
                          "' is a sup-oracle class");
  }
  if (cls.labels() != 2) throw ValidationError("cover operations need binary labels");
  std::vector<std::vector<double>> values;
  for (std::size_t i = 0; i < cls.experts().size(); ++i) {
    const Expert& e = cls.experts()[i];
    if (!e.is_non_sequential()) {
      throw ValidationError("expert " + std::to_string(i) +
                            " depends on the history; covers need maps X -> [0, 1]");
    }
    std::vector<double> row;
    for (int x = 0; x < cls.contexts(); ++x) row.push_back(e.prediction_at(x).probs()[1]);
    values.push_back(std::move(row));
  }
  return RealFunctionClass(std::move(values));
}

HypothesisClass RealFunctionClass::to_class() const {
  std::vector<Expert> experts;
  for (const auto& row : values_) {
    std::vector<Distribution> per;
    for (double v : row) per.push_back(Distribution::bernoulli(v));
    experts.push_back(Expert::non_sequential(std::move(per)));
  }
  return HypothesisClass::explicit_finite(2, contexts_, std::move(experts), "functions");
}

RealTree::RealTree(int depth, std::vector<double> values)
    : depth_(depth), values_(std::move(values)) {
  if (depth < 0) throw ValidationError("real tree depth must be >= 0");
  if (values_.size() != ContextTree::node_count(2, depth)) {
    throw ValidationError("real tree of depth " + std::to_string(depth) + " needs " +
                          std::to_string(ContextTree::node_count(2, depth)) + " values");
  }
  for (double& v : values_) v = checked_unit(v, "real tree");
}

RealTree RealTree::compose(const RealFunctionClass& cls, int f, const ContextTree& tree) {
  if (tree.labels() != 2) throw ValidationError("covers need binary context trees");
  if (tree.max_context() >= cls.contexts()) throw ValidationError("tree context outside the class");
  std::vector<double> values;
  values.reserve(tree.nodes().size());
  for (int x : tree.nodes()) values.push_back(cls.value(f, x));
  return RealTree(tree.depth(), std::move(values));
}

RealTree RealTree::constant(int depth, double value) {
  return RealTree(depth, std::vector<double>(ContextTree::node_count(2, depth), value));
}

double RealTree::at(std::span<const int> label_prefix) const {
  const int t = static_cast<int>(label_prefix.size());
  if (t >= depth_) throw ValidationError("label prefix reaches past the real tree");
  for (int y : label_prefix) {
    if (y != 0 && y != 1) throw ValidationError("real tree paths are binary");
  }
  return values_[ContextTree::level_offset(2, t) + path_code(label_prefix, 2)];
}

std::size_t GlobalMap::slot_count(int contexts, int depth) {
  return ContextTree::node_count(contexts, depth + 1) - 1;
}

std::size_t GlobalMap::slot(int contexts, std::span<const int> context_sequence) {
  const int t = static_cast<int>(context_sequence.size());
  return ContextTree::level_offset(contexts, t) + path_code(context_sequence, contexts) - 1;
}

GlobalMap::GlobalMap(int contexts, int depth, std::vector<double> values)
    : contexts_(contexts), depth_(depth), values_(std::move(values)) {
  if (contexts < 1 || depth < 0) throw ValidationError("global map needs |X| >= 1, depth >= 0");
  if (values_.size() != slot_count(contexts, depth)) {
    throw ValidationError("global map of depth " + std::to_string(depth) + " needs " +
                          std::to_string(slot_count(contexts, depth)) + " values");
  }
  for (double& v : values_) v = checked_unit(v, "global map");
}

double GlobalMap::at(std::span<const int> context_sequence) const {
  if (context_sequence.empty() || context_sequence.size() > static_cast<std::size_t>(depth_)) {
    throw ValidationError("global map queried outside lengths 1..depth");
  }
  for (int x : context_sequence) {
    if (x < 0 || x >= contexts_) throw ValidationError("global map context out of alphabet");
  }
  return values_[slot(contexts_, context_sequence)];
}

// ---------------------------------------------------------------------------
// Search engine shared by tree covers and global covers.
//
// A layout is a complete `arity`-ary tree with levels 0..depth-1 whose nodes
// carry a context (or -1 for an unconstrained node). A cover of size m is m
// value assignments over the nodes such that along every root-to-leaf path
// every function is tracked within alpha by one assignment. The search state
// at a node is, per slot, the set of functions the slot has tracked so far.

namespace {

struct Layout {
  int arity = 2;
  int depth = 0;
  std::vector<int> context;
  std::vector<std::size_t> offsets;  // first node of each level, plus the end

  void finish() {
    offsets.clear();
    for (int t = 0; t <= depth; ++t) offsets.push_back(ContextTree::level_offset(arity, t));
  }
  std::size_t leaf_count() const { return offsets[depth] - offsets[depth - 1]; }
  std::size_t child(int level, std::size_t node, int a) const {
    return offsets[level + 1] + (node - offsets[level]) * static_cast<std::size_t>(arity) +
           static_cast<std::size_t>(a);
  }
  // Nodes from the root to leaf `code`.
  void path_nodes(std::size_t code, std::vector<std::size_t>& out) const {
    out.assign(static_cast<std::size_t>(depth), 0);
    std::size_t c = code;
    for (int t = depth - 1; t >= 0; --t) {
      out[static_cast<std::size_t>(t)] = offsets[t] + c;
      c /= static_cast<std::size_t>(arity);
    }
  }
};

Layout tree_layout(const RealFunctionClass& cls, const ContextTree& tree) {
  if (tree.labels() != 2) throw ValidationError("covers need binary labels (K = 2)");
  if (tree.depth() < 1) throw ValidationError("cover trees need depth >= 1");
  if (tree.max_context() >= cls.contexts()) throw ValidationError("tree context outside the class");
  Layout l;
  l.arity = 2;
  l.depth = tree.depth();
  l.context.assign(tree.nodes().begin(), tree.nodes().end());
  l.finish();
  return l;
}

// Level t >= 1 holds the sequences x_{1:t}; the root is unconstrained.
Layout global_layout(int contexts, int horizon) {
  Layout l;
  l.arity = contexts;
  l.depth = horizon + 1;
  l.finish();
  l.context.assign(l.offsets[static_cast<std::size_t>(l.depth)], -1);
  for (int t = 1; t < l.depth; ++t) {
    for (std::size_t n = l.offsets[t]; n < l.offsets[t + 1]; ++n) {
      l.context[n] = static_cast<int>((n - l.offsets[t]) % static_cast<std::size_t>(contexts));
    }
  }
  return l;
}

struct Window {
  std::uint64_t mask;
  double value;
};

bool within(double u, double v, double alpha) { return std::fabs(u - v) <= alpha + kCoverTolerance; }

// Maximal windows [u, u + 2 alpha] (value u + alpha, capped at 1) over the
// values the slot still tracks at context x.
std::vector<Window> windows(const RealFunctionClass& cls, std::uint64_t mask, int x,
                            double alpha) {
  if (x < 0 || mask == 0) return {{mask, 0.0}};
  std::vector<Window> all;
  for (std::uint64_t m = mask; m; m &= m - 1) {
    const double a = std::min(cls.value(std::countr_zero(m), x) + alpha, 1.0);
    std::uint64_t w = 0;
    for (std::uint64_t r = mask; r; r &= r - 1) {
      const int g = std::countr_zero(r);
      if (within(cls.value(g, x), a, alpha)) w |= std::uint64_t{1} << g;
    }
    all.push_back({w, a});
  }
  std::vector<Window> kept;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j) {
      if (i == j) continue;
      const bool subset = (all[i].mask & ~all[j].mask) == 0;
      dominated = subset && (all[i].mask != all[j].mask || j < i);
    }
    if (!dominated) kept.push_back(all[i]);
  }
  std::sort(kept.begin(), kept.end(), [](const Window& a, const Window& b) {
    const int pa = std::popcount(a.mask);
    const int pb = std::popcount(b.mask);
    return pa != pb ? pa > pb : a.value < b.value;
  });
  return kept;
}

class SlotSearch {
 public:
  SlotSearch(const RealFunctionClass& cls, const Layout& layout, double alpha,
             std::uint64_t budget)
      : cls_(cls), layout_(layout), alpha_(alpha), budget_(budget), full_(full_mask(cls.size())) {}

  bool feasible(int slots) {
    std::vector<std::uint64_t> masks(static_cast<std::size_t>(slots), full_);
    return solve(0, 0, masks);
  }

  // values[slot][node] of a feasible cover with the given number of slots.
  std::vector<std::vector<double>> reconstruct(int slots) {
    std::vector<std::vector<double>> values(
        static_cast<std::size_t>(slots), std::vector<double>(layout_.context.size(), 0.0));
    std::vector<std::uint64_t> masks(static_cast<std::size_t>(slots), full_);
    if (!rebuild(0, 0, masks, values)) throw Error("cover reconstruction lost feasibility");
    return values;
  }

 private:
  void tick() {
    if (++work_ > budget_) throw BudgetExceeded("cover search steps", work_, budget_);
  }

  std::string key(std::size_t node, const std::vector<std::uint64_t>& sorted) const {
    std::string k(sizeof(std::size_t) + sorted.size() * sizeof(std::uint64_t), '\0');
    std::memcpy(k.data(), &node, sizeof(std::size_t));
    std::memcpy(k.data() + sizeof(std::size_t), sorted.data(),
                sorted.size() * sizeof(std::uint64_t));
    return k;
  }

  bool children_ok(int level, std::size_t node, const std::vector<std::uint64_t>& next) {
    if (level + 1 == layout_.depth) return true;
    for (int a = 0; a < layout_.arity; ++a) {
      if (!solve(layout_.child(level, node, a), level + 1, next)) return false;
    }
    return true;
  }

  bool solve(std::size_t node, int level, std::vector<std::uint64_t> masks) {
    std::sort(masks.begin(), masks.end(), std::greater<>());
    const std::string k = key(node, masks);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    tick();
    const int x = layout_.context[node];
    const std::size_t m = masks.size();
    std::vector<std::vector<Window>> opts(m);
    for (std::size_t j = 0; j < m; ++j) opts[j] = windows(cls_, masks[j], x, alpha_);
    std::vector<std::uint64_t> suffix(m + 1, 0);
    for (std::size_t j = m; j-- > 0;) suffix[j] = suffix[j + 1] | masks[j];
    std::vector<std::size_t> choice(m, 0);
    std::vector<std::uint64_t> next(m, 0);
    bool found = false;
    // Slots with equal masks are interchangeable, so their choices are
    // enumerated in nondecreasing order.
    auto assign = [&](auto& self, std::size_t j, std::uint64_t covered) -> bool {
      if ((covered | suffix[j]) != full_) return false;
      if (j == m) {
        tick();
        return children_ok(level, node, next);
      }
      const std::size_t start = j > 0 && masks[j] == masks[j - 1] ? choice[j - 1] : 0;
      for (std::size_t c = start; c < opts[j].size(); ++c) {
        choice[j] = c;
        next[j] = opts[j][c].mask;
        if (self(self, j + 1, covered | next[j])) return true;
      }
      return false;
    };
    found = assign(assign, 0, 0);
    memo_.emplace(k, found);
    return found;
  }

  bool rebuild(std::size_t node, int level, const std::vector<std::uint64_t>& masks,
               std::vector<std::vector<double>>& values) {
    const int x = layout_.context[node];
    const std::size_t m = masks.size();
    std::vector<std::vector<Window>> opts(m);
    for (std::size_t j = 0; j < m; ++j) opts[j] = windows(cls_, masks[j], x, alpha_);
    std::vector<std::uint64_t> suffix(m + 1, 0);
    for (std::size_t j = m; j-- > 0;) suffix[j] = suffix[j + 1] | masks[j];
    std::vector<std::uint64_t> next(m, 0);
    std::vector<double> chosen(m, 0.0);
    auto assign = [&](auto& self, std::size_t j, std::uint64_t covered) -> bool {
      if ((covered | suffix[j]) != full_) return false;
      if (j == m) return children_ok(level, node, next);
      for (const Window& w : opts[j]) {
        next[j] = w.mask;
        chosen[j] = w.value;
        if (self(self, j + 1, covered | w.mask)) return true;
      }
      return false;
    };
    if (!assign(assign, 0, 0)) return false;
    for (std::size_t j = 0; j < m; ++j) values[j][node] = chosen[j];
    if (level + 1 == layout_.depth) return true;
    const std::vector<std::uint64_t> child_masks = next;
    for (int a = 0; a < layout_.arity; ++a) {
      if (!rebuild(layout_.child(level, node, a), level + 1, child_masks, values)) return false;
    }
    return true;
  }

  const RealFunctionClass& cls_;
  const Layout& layout_;
  double alpha_;
  std::uint64_t budget_;
  std::uint64_t full_;
  std::uint64_t work_ = 0;
  std::unordered_map<std::string, bool> memo_;
};

// For every (f, leaf) the first slot tracking f within alpha along the path.
CoverCheck check_layout(const RealFunctionClass& cls, const Layout& layout,
                        const std::vector<std::vector<double>>& values, double alpha) {
  CoverCheck out;
  const std::size_t leaves = layout.leaf_count();
  out.witness.assign(static_cast<std::size_t>(cls.size()) * leaves, -1);
  std::vector<std::size_t> nodes;
  for (std::size_t leaf = 0; leaf < leaves; ++leaf) {
    layout.path_nodes(leaf, nodes);
    for (int f = 0; f < cls.size(); ++f) {
      int found = -1;
      for (std::size_t j = 0; j < values.size() && found < 0; ++j) {
        bool ok = true;
        for (std::size_t n : nodes) {
          const int x = layout.context[n];
          if (x >= 0 && !within(cls.value(f, x), values[j][n], alpha)) {
            ok = false;
            break;
          }
        }
        if (ok) found = static_cast<int>(j);
      }
      if (found < 0) {
        CoverFailure fail;
        fail.function = f;
        fail.path.assign(static_cast<std::size_t>(layout.depth - 1), 0);
        decode_path(leaf, layout.arity, fail.path);
        out.failure = std::move(fail);
        out.witness.clear();
        return out;
      }
      out.witness[static_cast<std::size_t>(f) * leaves + leaf] = found;
    }
  }
  out.covered = true;
  return out;
}

// Greedy set cover over the trees (f + g) / 2 o x; every f o x is among
// them, so the greedy always terminates.
int greedy_cover_size(const RealFunctionClass& cls, const Layout& layout, double alpha) {
  const std::size_t leaves = layout.leaf_count();
  const std::size_t n = static_cast<std::size_t>(cls.size());
  std::vector<std::vector<bool>> sets;
  std::vector<std::size_t> nodes;
  for (int f = 0; f < cls.size(); ++f) {
    for (int g = f; g < cls.size(); ++g) {
      std::vector<bool> covers(n * leaves, false);
      for (std::size_t leaf = 0; leaf < leaves; ++leaf) {
        layout.path_nodes(leaf, nodes);
        for (int h = 0; h < cls.size(); ++h) {
          bool ok = true;
          for (std::size_t node : nodes) {
            const int x = layout.context[node];
            if (x < 0) continue;
            const double c = 0.5 * (cls.value(f, x) + cls.value(g, x));
            if (!within(cls.value(h, x), c, alpha)) {
              ok = false;
              break;
            }
          }
          covers[static_cast<std::size_t>(h) * leaves + leaf] = ok;
        }
      }
      sets.push_back(std::move(covers));
    }
  }
  std::vector<bool> done(n * leaves, false);
  std::size_t remaining = n * leaves;
  int used = 0;
  while (remaining > 0) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      std::size_t gain = 0;
      for (std::size_t e = 0; e < done.size(); ++e) gain += !done[e] && sets[s][e];
      if (gain > best_gain) {
        best_gain = gain;
        best = s;
      }
    }
    if (best_gain == 0) throw Error("greedy cover made no progress");
    for (std::size_t e = 0; e < done.size(); ++e) {
      if (!done[e] && sets[best][e]) {
        done[e] = true;
        --remaining;
      }
    }
    ++used;
  }
  return used;
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError("scale alpha must be >= 0");
}

void check_budget(std::uint64_t budget) {
  if (budget == 0) throw ValidationError("budget must be positive");
}

int min_slots(SlotSearch& search, int start, int limit) {
  for (int m = start; m <= limit; ++m) {
    if (search.feasible(m)) return m;
  }
  throw Error("self-cover infeasible; the search is inconsistent");
}

}  // namespace

// ---------------------------------------------------------------------------

CoverCheck is_sequential_cover(std::span<const RealTree> cover, const RealFunctionClass& cls,
                               const ContextTree& tree, double alpha) {
  check_alpha(alpha);
  const Layout layout = tree_layout(cls, tree);
  std::vector<std::vector<double>> values;
  for (const RealTree& v : cover) {
    if (v.depth() != tree.depth()) throw ValidationError("cover tree depth differs from the tree");
    values.emplace_back(v.values().begin(), v.values().end());
  }
  return check_layout(cls, layout, values, alpha);
}

MinCoverResult min_sequential_cover(const RealFunctionClass& cls, const ContextTree& tree,
                                    double alpha, std::uint64_t budget) {
  check_alpha(alpha);
  check_budget(budget);
  const Layout layout = tree_layout(cls, tree);
  SlotSearch search(cls, layout, alpha, budget);
  MinCoverResult out;
  out.size = min_slots(search, 1, cls.size());
  out.greedy_size = greedy_cover_size(cls, layout, alpha);
  out.certificate.alpha = alpha;
  for (auto& v : search.reconstruct(out.size)) {
    out.certificate.trees.emplace_back(tree.depth(), std::move(v));
  }
  CoverCheck check = is_sequential_cover(out.certificate.trees, cls, tree, alpha);
  if (!check.covered) throw Error("reconstructed cover fails its own check");
  out.certificate.witness = std::move(check.witness);
  return out;
}

EntropyResult sequential_entropy(const RealFunctionClass& cls, double alpha, int horizon,
                                 std::uint64_t tree_budget, std::uint64_t budget) {
  check_alpha(alpha);
  check_budget(budget);
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  EntropyResult out;
  if (horizon == 0) {
    out.worst_tree = ContextTree(2, 0, {});
    return out;
  }
  const std::size_t nodes = ContextTree::node_count(2, horizon);
  const std::uint64_t count = saturating_pow(static_cast<std::uint64_t>(cls.contexts()),
                                             static_cast<int>(std::min<std::size_t>(nodes, 4096)));
  require_budget("context trees", count, tree_budget);
  std::vector<int> digits(nodes, 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    ContextTree tree(2, horizon, digits);
    const Layout layout = tree_layout(cls, tree);
    SlotSearch search(cls, layout, alpha, budget);
    // Only whether this tree needs more than the best so far matters.
    if (i == 0 || !search.feasible(out.cover_size)) {
      out.cover_size = min_slots(search, i == 0 ? 1 : out.cover_size + 1, cls.size());
      out.worst_tree = tree;
    }
    ++out.trees_enumerated;
    for (std::size_t d = nodes; d-- > 0;) {
      if (++digits[d] < cls.contexts()) break;
      digits[d] = 0;
    }
  }
  out.entropy = std::log(static_cast<double>(out.cover_size));
  return out;
}

GlobalCoverResult global_entropy(const RealFunctionClass& cls, double alpha, int horizon,
                                 std::uint64_t budget) {
  check_alpha(alpha);
  check_budget(budget);
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  GlobalCoverResult out;
  out.certificate.alpha = alpha;
  if (horizon == 0) {
    out.size = out.greedy_size = 1;
    out.certificate.maps.emplace_back(cls.contexts(), 0, std::vector<double>{});
    out.certificate.witness.assign(static_cast<std::size_t>(cls.size()), 0);
    return out;
  }
  require_budget("global cover nodes",
                 saturating_pow(static_cast<std::uint64_t>(cls.contexts()), horizon), budget);
  const Layout layout = global_layout(cls.contexts(), horizon);
  SlotSearch search(cls, layout, alpha, budget);
  out.size = min_slots(search, 1, cls.size());
  out.entropy = std::log(static_cast<double>(out.size));
  out.greedy_size = greedy_cover_size(cls, layout, alpha);
  for (auto& v : search.reconstruct(out.size)) {
    out.certificate.maps.emplace_back(cls.contexts(), horizon,
                                      std::vector<double>(v.begin() + 1, v.end()));
  }
  CoverCheck check = is_global_cover(out.certificate.maps, cls, alpha);
  if (!check.covered) throw Error("reconstructed global cover fails its own check");
  out.certificate.witness = std::move(check.witness);
  return out;
}

CoverCheck is_global_cover(std::span<const GlobalMap> cover, const RealFunctionClass& cls,
                           double alpha) {
  check_alpha(alpha);
  if (cover.empty()) {
    CoverCheck none;
    none.failure = CoverFailure{0, {}};
    return none;
  }
  const int depth = cover.front().depth();
  if (depth < 1) throw ValidationError("global cover check needs depth >= 1");
  std::vector<std::vector<double>> values;
  for (const GlobalMap& g : cover) {
    if (g.depth() != depth || g.contexts() != cls.contexts()) {
      throw ValidationError("global maps disagree on depth or context alphabet");
    }
    std::vector<double> v(1, 0.0);
    v.insert(v.end(), g.values().begin(), g.values().end());
    values.push_back(std::move(v));
  }
  return check_layout(cls, global_layout(cls.contexts(), depth), values, alpha);
}

std::vector<RealTree> induce_tree_cover(std::span<const GlobalMap> cover, const ContextTree& tree) {
  if (tree.labels() != 2) throw ValidationError("covers need binary context trees");
  std::vector<RealTree> out;
  for (const GlobalMap& g : cover) {
    if (g.depth() < tree.depth()) throw ValidationError("global map shallower than the tree");
    std::vector<double> values;
    values.reserve(tree.nodes().size());
    for (int t = 0; t < tree.depth(); ++t) {
      std::vector<int> path(static_cast<std::size_t>(t) + 1, 0);
      for (std::size_t c = 0; c < path_count(2, t); ++c) {
        decode_path(c, 2, std::span<int>(path).first(static_cast<std::size_t>(t)));
        values.push_back(g.at(tree.contexts_along(path)));
      }
    }
    out.emplace_back(tree.depth(), std::move(values));
  }
  return out;
}

double smoothed_cover_value(double v, double alpha) { return (v + alpha) / (1.0 + 2.0 * alpha); }

double smoothed_cover_max_ratio(const CoverCertificate& certificate, const RealFunctionClass& cls,
                                const ContextTree& tree) {
  const double alpha = certificate.alpha;
  if (!(alpha > 0.0)) throw ValidationError("smoothing needs alpha > 0");
  const Layout layout = tree_layout(cls, tree);
  const std::size_t leaves = layout.leaf_count();
  if (certificate.witness.size() != static_cast<std::size_t>(cls.size()) * leaves) {
    throw ValidationError("certificate witness table has the wrong size");
  }
  double worst = 0.0;
  std::vector<std::size_t> nodes;
  for (std::size_t leaf = 0; leaf < leaves; ++leaf) {
    layout.path_nodes(leaf, nodes);
    for (int f = 0; f < cls.size(); ++f) {
      const int j = certificate.witness[static_cast<std::size_t>(f) * leaves + leaf];
      const RealTree& v = certificate.trees.at(static_cast<std::size_t>(j));
      for (std::size_t n : nodes) {
        const double p = cls.value(f, layout.context[n]);
        const double s = smoothed_cover_value(v.values()[n], alpha);
        worst = std::max({worst, p / s, (1.0 - p) / (1.0 - s)});
      }
    }
  }
  return worst;
}

}  // namespace shlab

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


#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "shlab/core/history.h"
#include "shlab/covers/covers.h"

namespace shlab {

namespace {

// A set S shatters depth d iff some context x and witness s split it into
// U = {f : f(x) - s passes} and D = {f : s - f(x) passes}, both shattering
// depth d - 1. Subtrees are independent, so the search recurses on subsets.
class FatSearch {
 public:
  FatSearch(const RealFunctionClass& cls, double alpha, bool strict, std::uint64_t budget)
      : cls_(cls), margin_(alpha / 2.0), strict_(strict), budget_(budget) {}

  struct Split {
    int context = 0;
    double witness = 0.0;
    std::uint64_t up = 0;
    std::uint64_t down = 0;
  };

  bool shatters(int depth, std::uint64_t mask) {
    if (mask == 0) return false;
    if (depth == 0) return true;
    if (memo_.size() <= static_cast<std::size_t>(depth)) memo_.resize(depth + 1);
    auto& memo = memo_[static_cast<std::size_t>(depth)];
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    if (++work_ > budget_) throw BudgetExceeded("fat-shattering search steps", work_, budget_);
    const bool ok = find_split(depth, mask).has_value();
    memo_[static_cast<std::size_t>(depth)].emplace(mask, ok);
    return ok;
  }

  std::optional<Split> find_split(int depth, std::uint64_t mask) {
    for (int x = 0; x < cls_.contexts(); ++x) {
      for (double s : candidates(mask, x)) {
        Split sp{x, s, 0, 0};
        for (std::uint64_t r = mask; r; r &= r - 1) {
          const int f = std::countr_zero(r);
          const double u = cls_.value(f, x);
          if (passes(u - s)) sp.up |= std::uint64_t{1} << f;
          if (passes(s - u)) sp.down |= std::uint64_t{1} << f;
        }
        if (sp.up && sp.down && shatters(depth - 1, sp.up) && shatters(depth - 1, sp.down)) {
          return sp;
        }
      }
    }
    return std::nullopt;
  }

 private:
  bool passes(double gap) const {
    return strict_ ? gap > margin_ + kCoverTolerance : gap >= margin_ - kCoverTolerance;
  }

  // The split only changes where s crosses u -+ margin; those points, the
  // endpoints of [0, 1] and the midpoints between neighbours cover every case
  // for both the closed and the strict condition.
  std::vector<double> candidates(std::uint64_t mask, int x) const {
    std::vector<double> pts = {0.0, 1.0};
    for (std::uint64_t r = mask; r; r &= r - 1) {
      const double u = cls_.value(std::countr_zero(r), x);
      for (double p : {u - margin_, u + margin_}) {
        if (p >= 0.0 && p <= 1.0) pts.push_back(p);
      }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i + 1 < n; ++i) pts.push_back(0.5 * (pts[i] + pts[i + 1]));
    return pts;
  }

  const RealFunctionClass& cls_;
  double margin_;
  bool strict_;
  std::uint64_t budget_;
  std::uint64_t work_ = 0;
  std::vector<std::unordered_map<std::uint64_t, bool>> memo_;
};

std::uint64_t all_functions(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

}  // namespace

FatResult fat_shattering_dim(const RealFunctionClass& cls, double alpha, int max_depth,
                             bool strict, std::uint64_t budget) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("scale alpha must be > 0");
  if (max_depth < 0) throw ValidationError("max depth must be >= 0");
  if (max_depth > 30) throw ValidationError("max depth above 30 is not supported");
  if (budget == 0) throw ValidationError("budget must be positive");
  FatSearch search(cls, alpha, strict, budget);
  const std::uint64_t full = all_functions(cls.size());
  int d = 0;
  while (d < max_depth && search.shatters(d + 1, full)) ++d;

  FatResult out;
  out.dimension = d;
  std::vector<int> nodes(ContextTree::node_count(2, d), 0);
  std::vector<double> witness(nodes.size(), 0.0);
  std::vector<std::uint64_t> level = {full};
  for (int t = 0; t < d; ++t) {
    std::vector<std::uint64_t> next;
    const std::size_t offset = ContextTree::level_offset(2, t);
    for (std::size_t c = 0; c < level.size(); ++c) {
      const auto sp = search.find_split(d - t, level[c]);
      if (!sp) throw Error("shattering reconstruction lost a split");
      nodes[offset + c] = sp->context;
      witness[offset + c] = sp->witness;
      next.push_back(sp->down);  // label 0
      next.push_back(sp->up);    // label 1
    }
    level = std::move(next);
  }
  out.tree = ContextTree(2, d, std::move(nodes));
  out.witness = RealTree(d, std::move(witness));
  return out;
}

bool is_shattered(const RealFunctionClass& cls, const ContextTree& tree, const RealTree& witness,
                  double alpha, bool strict) {
  if (tree.labels() != 2) throw ValidationError("shattering needs a binary tree");
  if (witness.depth() != tree.depth()) throw ValidationError("witness depth differs from tree");
  if (tree.max_context() >= cls.contexts()) throw ValidationError("tree context outside the class");
  const double margin = alpha / 2.0;
  const int d = tree.depth();
  std::vector<int> path(static_cast<std::size_t>(d));
  for (std::size_t code = 0; code < path_count(2, d); ++code) {
    decode_path(code, 2, path);
    bool some = false;
    for (int f = 0; f < cls.size() && !some; ++f) {
      bool all = true;
      for (int t = 0; t < d && all; ++t) {
        const std::span<const int> prefix(path.data(), static_cast<std::size_t>(t));
        const double gap = (2 * path[static_cast<std::size_t>(t)] - 1) *
                           (cls.value(f, tree.context_at(prefix)) - witness.at(prefix));
        all = strict ? gap > margin + kCoverTolerance : gap >= margin - kCoverTolerance;
      }
      some = all;
    }
    if (!some) return false;
  }
  return true;
}

}  // namespace shlab

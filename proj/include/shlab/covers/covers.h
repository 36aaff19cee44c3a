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


#ifndef SHLAB_COVERS_COVERS_H_
#define SHLAB_COVERS_COVERS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shlab/core/context_tree.h"
#include "shlab/core/errors.h"
#include "shlab/core/hypothesis_class.h"

namespace shlab {

inline constexpr double kCoverTolerance = 1e-12;
inline constexpr std::uint64_t kDefaultCoverBudget = 50'000'000;

// A finite class F of maps X -> [0, 1], f(x) = P(label 1 | x). At most 64
// functions, since the search engines keep subsets of F as bitmasks.
class RealFunctionClass {
 public:
  // values[f][x]; every row has the same length and lies in [0, 1].
  explicit RealFunctionClass(std::vector<std::vector<double>> values);

  // Binary explicit class of non-sequential experts. Oracle classes and
  // other label counts are rejected.
  static RealFunctionClass from_class(const HypothesisClass& cls);
  HypothesisClass to_class() const;

  int size() const { return static_cast<int>(values_.size()); }
  int contexts() const { return contexts_; }
  double value(int f, int x) const {
    return values_[static_cast<std::size_t>(f)][static_cast<std::size_t>(x)];
  }
  const std::vector<std::vector<double>>& values() const { return values_; }

 private:
  std::vector<std::vector<double>> values_;
  int contexts_ = 0;
};

// A binary [0, 1]-valued tree: one value per label prefix of length 0..T-1,
// stored in the ContextTree layout. Values are clamped to [0, 1].
class RealTree {
 public:
  RealTree() = default;
  RealTree(int depth, std::vector<double> values);

  // f composed with a context tree.
  static RealTree compose(const RealFunctionClass& cls, int f, const ContextTree& tree);
  static RealTree constant(int depth, double value);

  int depth() const { return depth_; }
  std::span<const double> values() const { return values_; }
  double at(std::span<const int> label_prefix) const;

 private:
  int depth_ = 0;
  std::vector<double> values_;
};

// A history-indexed map g: X^t -> [0, 1] for 1 <= t <= depth.
class GlobalMap {
 public:
  GlobalMap() = default;
  GlobalMap(int contexts, int depth, std::vector<double> values);

  int contexts() const { return contexts_; }
  int depth() const { return depth_; }
  std::span<const double> values() const { return values_; }
  double at(std::span<const int> context_sequence) const;

  // Flat slot of a sequence of length 1..depth: level by level, earliest
  // context most significant.
  static std::size_t slot(int contexts, std::span<const int> context_sequence);
  static std::size_t slot_count(int contexts, int depth);

 private:
  int contexts_ = 1;
  int depth_ = 0;
  std::vector<double> values_;
};

// A sequential cover with, for every function f and every label path
// y_{1:T-1}, the index of a tree that stays within alpha along the path:
// witness[f * 2^{T-1} + path_code(y)].
struct CoverCertificate {
  double alpha = 0.0;
  std::vector<RealTree> trees;
  std::vector<int> witness;
};

// Global analogue: witness[f * |X|^T + code(x_{1:T})].
struct GlobalCertificate {
  double alpha = 0.0;
  std::vector<GlobalMap> maps;
  std::vector<int> witness;
};

struct CoverFailure {
  int function = 0;
  std::vector<int> path;  // y_{1:T-1}
};

struct CoverCheck {
  bool covered = false;
  std::optional<CoverFailure> failure;  // first uncovered (f, path)
  std::vector<int> witness;             // filled when covered
};

CoverCheck is_sequential_cover(std::span<const RealTree> cover, const RealFunctionClass& cls,
                               const ContextTree& tree, double alpha);

struct MinCoverResult {
  int size = 0;
  int greedy_size = 0;  // greedy set cover over midpoint trees, an upper bound
  CoverCertificate certificate;
};

// Exact minimum cover of F o x. Cover values are searched over windows
// [u, u + 2 alpha] anchored at realized values u, which loses nothing: any
// window can be slid right until its lowest covered value sits on its edge.
MinCoverResult min_sequential_cover(const RealFunctionClass& cls, const ContextTree& tree,
                                    double alpha, std::uint64_t budget = kDefaultCoverBudget);

struct EntropyResult {
  double entropy = 0.0;  // log of the worst-case cover size
  int cover_size = 1;
  ContextTree worst_tree;
  std::uint64_t trees_enumerated = 0;
};

// sup over all binary context trees of depth T of log N(F o x, alpha).
// `tree_budget` caps |X|^{2^T - 1}.
EntropyResult sequential_entropy(const RealFunctionClass& cls, double alpha, int horizon,
                                 std::uint64_t tree_budget = kDefaultBudget,
                                 std::uint64_t budget = kDefaultCoverBudget);

struct GlobalCoverResult {
  double entropy = 0.0;
  int size = 0;
  int greedy_size = 0;
  GlobalCertificate certificate;
};

GlobalCoverResult global_entropy(const RealFunctionClass& cls, double alpha, int horizon,
                                 std::uint64_t budget = kDefaultCoverBudget);

// Checks a global cover on every context sequence of length depth.
CoverCheck is_global_cover(std::span<const GlobalMap> cover, const RealFunctionClass& cls,
                           double alpha);

// v^g_t(y) = g(x_{1:t}(y)) for each map g.
std::vector<RealTree> induce_tree_cover(std::span<const GlobalMap> cover, const ContextTree& tree);

// (v + alpha) / (1 + 2 alpha).
double smoothed_cover_value(double v, double alpha);

// Largest of f / v~ and (1 - f) / (1 - v~) over all functions, paths and
// rounds, where v~ smooths the certificate's witness tree.
double smoothed_cover_max_ratio(const CoverCertificate& certificate, const RealFunctionClass& cls,
                                const ContextTree& tree);

struct FatResult {
  int dimension = 0;
  ContextTree tree;     // a shattered tree of that depth
  RealTree witness;
};

// Largest d <= max_depth such that some depth-d tree is alpha-shattered:
// every path has an f with (2y_t - 1)(f(x_t) - s_t) >= alpha / 2, or
// > alpha / 2 when `strict`. The strict form at scale 2a equals
// sup_{a' > a} fat(2a') for finite classes.
FatResult fat_shattering_dim(const RealFunctionClass& cls, double alpha, int max_depth,
                             bool strict = false, std::uint64_t budget = kDefaultCoverBudget);

// Checks a shattering certificate directly.
bool is_shattered(const RealFunctionClass& cls, const ContextTree& tree, const RealTree& witness,
                  double alpha, bool strict = false);

}  // namespace shlab

#endif  // SHLAB_COVERS_COVERS_H_

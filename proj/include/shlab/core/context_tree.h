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

#ifndef SHLAB_CORE_CONTEXT_TREE_H_
#define SHLAB_CORE_CONTEXT_TREE_H_

#include <cstddef>
#include <span>
#include <vector>

namespace shlab {

// A K-ary, context-valued tree of depth T: one context per label prefix of
// length 0..T-1. Nodes are stored level by level; within a level, prefixes
// are in mixed-radix order (earliest label most significant).
class ContextTree {
 public:
  ContextTree() = default;
  // `nodes` must have node_count(labels, depth) entries, all >= 0.
  ContextTree(int labels, int depth, std::vector<int> nodes);

  // The tree that plays x_t at every node of level t.
  static ContextTree constant(int labels, std::span<const int> sequence);

  // (K^T - 1)/(K - 1) for K >= 2 and T for K = 1.
  static std::size_t node_count(int labels, int depth);
  // Index of the first node of level `t` (0-based level).
  static std::size_t level_offset(int labels, int t);

  int labels() const { return labels_; }
  int depth() const { return depth_; }
  std::span<const int> nodes() const { return nodes_; }
  int max_context() const;

  // Context played after `label_prefix` (length < depth).
  int context_at(std::span<const int> label_prefix) const;

  // x_1(y), ..., x_n(y) along a path of length n <= depth. The last label of
  // the path is not needed to determine x_n.
  std::vector<int> contexts_along(std::span<const int> path) const;

  // Flat node index of `label_prefix`.
  std::size_t node_index(std::span<const int> label_prefix) const;

  friend bool operator==(const ContextTree&, const ContextTree&) = default;

 private:
  int labels_ = 2;
  int depth_ = 0;
  std::vector<int> nodes_;
};

}  // namespace shlab

#endif  // SHLAB_CORE_CONTEXT_TREE_H_

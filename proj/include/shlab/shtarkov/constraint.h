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


#ifndef SHLAB_SHTARKOV_CONSTRAINT_H_
#define SHLAB_SHTARKOV_CONSTRAINT_H_

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "shlab/core/context_tree.h"
#include "shlab/core/history.h"

namespace shlab {

// Time-varying admissible context sets. Round t admits the per-round set
// (all contexts when none is given) unless an override for the exact
// history (x_{1:t-1}, y_{1:t-1}) replaces it. Sets are context bitmasks, so
// constrained computations need at most 64 contexts. The default-constructed
// constraint admits every context.
class ContextConstraint {
 public:
  ContextConstraint() = default;

  // per_round[t-1] lists the contexts admitted at round t. Rounds past the
  // end of the list are unconstrained.
  explicit ContextConstraint(std::vector<std::vector<int>> per_round);

  // Replaces the admissible set after the complete history (contexts, labels).
  void add_override(std::vector<int> contexts, std::vector<int> labels, std::vector<int> allowed);

  bool unconstrained() const { return per_round_.empty() && overrides_.empty(); }

  // Bitmask of contexts admitted at the round following the complete history.
  // Throws ValidationError when the set is empty or num_contexts > 64.
  std::uint64_t allowed(std::span<const int> contexts, std::span<const int> labels,
                        int num_contexts) const;

  // True when every node of `tree`, reached after `prefix`, plays an
  // admitted context.
  bool admits(const ContextTree& tree, const Prefix& prefix, int num_contexts) const;

  const std::vector<std::vector<int>>& per_round() const { return per_round_; }
  struct Override {
    std::vector<int> contexts;
    std::vector<int> labels;
    std::vector<int> allowed;
  };
  std::vector<Override> overrides() const;

 private:
  std::vector<std::vector<int>> per_round_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<int>> overrides_;
};

// Bitmask with the lowest `num_contexts` bits set.
std::uint64_t full_context_mask(int num_contexts);

}  // namespace shlab

#endif  // SHLAB_SHTARKOV_CONSTRAINT_H_

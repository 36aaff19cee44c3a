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


#ifndef SHLAB_SHTARKOV_SUMS_H_
#define SHLAB_SHTARKOV_SUMS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "shlab/core/context_tree.h"
#include "shlab/core/history.h"
#include "shlab/core/hypothesis_class.h"
#include "shlab/core/log_value.h"

namespace shlab {

// Cap on the number of label paths a single sum may enumerate.
inline constexpr std::uint64_t kDefaultPathBudget = std::uint64_t{1} << 24;

// sup_f log L(f; (y_{1:t}, y) | (x_{1:t}, x(y))) for every continuation y of
// length tree.depth(), in path_code order. `prefix` must be complete.
std::vector<double> path_sup_values(const HypothesisClass& cls, const ContextTree& tree,
                                    const Prefix& prefix = {},
                                    std::uint64_t budget = kDefaultPathBudget);

// log sum_{y in Y^T} sup_f L(f; y), every round played at context 0.
LogValue shtarkov_contextfree(const HypothesisClass& cls, int horizon,
                              std::uint64_t budget = kDefaultPathBudget);

// log sum_y sup_f L(f; y | x_{1:T}) for a fixed context sequence.
LogValue shtarkov_conditional(const HypothesisClass& cls, std::span<const int> contexts,
                              std::uint64_t budget = kDefaultPathBudget);

// log sum_y sup_f L(f; y | x(y)) on a context tree.
LogValue shtarkov_contextual(const HypothesisClass& cls, const ContextTree& tree,
                             std::uint64_t budget = kDefaultPathBudget);

// Continuation sum after a complete prefix of length t; the tree has depth
// horizon - t.
LogValue shtarkov_prefix(const HypothesisClass& cls, const ContextTree& tree, const Prefix& prefix,
                         int horizon, std::uint64_t budget = kDefaultPathBudget);

struct McEstimate {
  double estimate = 0.0;  // linear domain
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

// Unbiased estimate of the linear-domain contextual sum: the mean over n
// uniform label paths of exp(T log K + sup_f log L(f; y | x(y))).
McEstimate shtarkov_mc_estimate(const HypothesisClass& cls, const ContextTree& tree,
                                std::uint64_t samples, std::uint64_t seed);

}  // namespace shlab

#endif  // SHLAB_SHTARKOV_SUMS_H_

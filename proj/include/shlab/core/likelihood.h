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

#ifndef SHLAB_CORE_LIKELIHOOD_H_
#define SHLAB_CORE_LIKELIHOOD_H_

#include <span>

#include "shlab/core/context_tree.h"
#include "shlab/core/expert.h"
#include "shlab/core/hypothesis_class.h"
#include "shlab/core/log_value.h"

namespace shlab {

// Throws ValidationError unless both sequences have equal length and every
// symbol is in range. `contexts` < 0 skips the context range check.
void validate_sequences(int labels, int contexts, std::span<const int> context_seq,
                        std::span<const int> label_seq);

// log L(f; y_{1:d} | x_{1:d}) = sum_t log f(x_{1:t}, y_{1:t-1})(y_t).
// Zero for d = 0, -inf iff some factor vanishes.
LogValue likelihood(const Expert& f, std::span<const int> contexts, std::span<const int> labels);

// sup over the class, lowest index on ties.
SupResult class_sup_likelihood(const HypothesisClass& cls, std::span<const int> contexts,
                               std::span<const int> labels);

// The context-free expert f|_x induced by tracing `tree`.
Expert project_expert(const Expert& f, const ContextTree& tree);

// log sum_{y in Y^T} L(f; y | x(y)); zero for every valid expert.
LogValue verify_normalization(const Expert& f, const ContextTree& tree);

}  // namespace shlab

#endif  // SHLAB_CORE_LIKELIHOOD_H_

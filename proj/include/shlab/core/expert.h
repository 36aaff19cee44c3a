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

#ifndef SHLAB_CORE_EXPERT_H_
#define SHLAB_CORE_EXPERT_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shlab/core/context_tree.h"
#include "shlab/core/distribution.h"
#include "shlab/core/history.h"

namespace shlab {

// Finite set of design points for the linear families; context i is
// points[i].
using Design = std::vector<std::vector<double>>;

enum class LinearVariant {
  kLin,     // P(1 | x) = (<w, x> + 1) / 2
  kAbsLin,  // P(1 | x) = |<w, x>|
};

// A deterministic sequential expert: a map from (x_{1:t}, y_{1:t-1}) to a
// label distribution. Immutable and cheap to copy.
class Expert {
 public:
  // Explicit history table. `probs` holds `labels` entries per history, in
  // HistoryIndexer(labels, contexts, horizon) order. Every row is validated.
  static Expert table(int labels, int contexts, int horizon, std::vector<double> probs);

  // Non-sequential expert: the prediction depends only on x_t.
  static Expert non_sequential(std::vector<Distribution> per_context);

  // Same prediction at every round, for every context.
  static Expert constant(Distribution prediction);

  // Probability one on sequence[t-1] at round t; uniform after the sequence
  // ends.
  static Expert point_mass(int labels, std::vector<int> sequence);

  // Binary linear rule on a finite design; `w` must lie in the unit ball.
  static Expert linear(LinearVariant variant, std::vector<double> w,
                       std::shared_ptr<const Design> design);

  // Applies p -> (p + delta) / (1 + K delta) to every prediction of `base`.
  static Expert truncated(Expert base, double delta);

  // Context-free expert g(y_{1:t-1}) = base(x(y_{1:t-1}), y_{1:t-1}); the
  // contexts passed to it are ignored.
  static Expert projected(Expert base, ContextTree tree);

  int labels() const { return labels_; }
  // Number of contexts the expert is defined on; nullopt if it accepts any.
  std::optional<int> contexts() const;
  // Deepest round the expert can answer; nullopt if unbounded.
  std::optional<int> max_round() const;
  // True when the prediction depends only on the current context.
  bool is_non_sequential() const;
  std::string kind() const;

  // Writes f(x_{1:t}, y_{1:t-1}) into `out` (size labels()).
  void predict(HistoryView history, std::span<double> out) const;
  double probability(HistoryView history, int label) const;
  Distribution prediction(HistoryView history) const;

  // For non-sequential experts: the prediction at context x.
  Distribution prediction_at(int context) const;

  struct Rule;

 private:
  Expert(std::shared_ptr<const Rule> rule, int labels) : rule_(std::move(rule)), labels_(labels) {}

  std::shared_ptr<const Rule> rule_;
  int labels_ = 2;
};

// P(1 | x) of a linear rule; `x` and `w` must have equal dimension.
double linear_rule_value(LinearVariant variant, std::span<const double> w,
                         std::span<const double> x);

}  // namespace shlab

#endif  // SHLAB_CORE_EXPERT_H_

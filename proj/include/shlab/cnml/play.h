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


#ifndef SHLAB_CNML_PLAY_H_
#define SHLAB_CNML_PLAY_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "shlab/cnml/forecaster.h"

namespace shlab {

// Chooses contexts and labels. next_label sees the learner's prediction for
// the current round; next_context does not.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual void reset() {}
  // `history` is complete: (x_{1:t-1}, y_{1:t-1}).
  virtual int next_context(const Prefix& history) = 0;
  // `history` is (x_{1:t}, y_{1:t-1}).
  virtual int next_label(const Prefix& history, const Distribution& prediction) = 0;
};

// Replays fixed sequences.
class SequenceAdversary : public Adversary {
 public:
  SequenceAdversary(std::vector<int> contexts, std::vector<int> labels);
  int next_context(const Prefix& history) override;
  int next_label(const Prefix& history, const Distribution& prediction) override;

 private:
  std::vector<int> contexts_;
  std::vector<int> labels_;
};

// Plays the worst-case recursion's argmax context, then the label maximizing
// -log p(y) + V(h x y) (lowest label on ties).
class WorstCaseAdversary : public Adversary {
 public:
  WorstCaseAdversary(HypothesisClass cls, int horizon, ContextConstraint constraint = {});
  int next_context(const Prefix& history) override;
  int next_label(const Prefix& history, const Distribution& prediction) override;

 private:
  WorstCaseSolver solver_;
};

struct Transcript {
  std::vector<int> contexts;
  std::vector<Distribution> predictions;
  std::vector<int> labels;
  std::vector<double> losses;
  double cumulative_loss = 0.0;
  double best_expert_loss = 0.0;
  double regret = 0.0;
  // Regret from per-expert running tallies (explicit classes) or the oracle.
  double regret_incremental = 0.0;
};

// `regret` is -inf when every expert has infinite loss, +inf when only the
// learner does.
Transcript play_game(Forecaster& forecaster, Adversary& adversary, const HypothesisClass& cls,
                     int horizon);

struct WorstRegretResult {
  double value = 0.0;
  std::vector<int> contexts;
  std::vector<int> labels;
  std::uint64_t sequences = 0;
};

// Replays every admissible (x, y) sequence of length T against a fresh
// reset of `forecaster` and returns the largest regret (first argmax).
// Throws BudgetExceeded when (|X| K)^T > budget.
WorstRegretResult exhaustive_worst_regret(Forecaster& forecaster, const HypothesisClass& cls,
                                          int horizon, const ContextConstraint& constraint = {},
                                          std::uint64_t budget = kDefaultBudget);

}  // namespace shlab

#endif  // SHLAB_CNML_PLAY_H_

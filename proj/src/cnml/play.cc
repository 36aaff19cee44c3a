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


#include "shlab/cnml/play.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "shlab/core/likelihood.h"

namespace shlab {

SequenceAdversary::SequenceAdversary(std::vector<int> contexts, std::vector<int> labels)
    : contexts_(std::move(contexts)), labels_(std::move(labels)) {
  if (contexts_.size() != labels_.size()) {
    throw ValidationError("sequence adversary needs equal-length contexts and labels");
  }
}

int SequenceAdversary::next_context(const Prefix& history) {
  if (history.length() >= contexts_.size()) throw ValidationError("sequence adversary ran out");
  return contexts_[history.length()];
}

int SequenceAdversary::next_label(const Prefix& history, const Distribution&) {
  return labels_.at(history.length() - 1);
}

WorstCaseAdversary::WorstCaseAdversary(HypothesisClass cls, int horizon,
                                       ContextConstraint constraint)
    : solver_(std::move(cls), horizon, std::move(constraint)) {}

int WorstCaseAdversary::next_context(const Prefix& history) {
  return solver_.best_context(history);
}

int WorstCaseAdversary::next_label(const Prefix& history, const Distribution& prediction) {
  std::vector<int> lab = history.labels();
  lab.push_back(0);
  int arg = 0;
  double best = kNegInf;
  for (int y = 0; y < prediction.size(); ++y) {
    lab.back() = y;
    const double v = solver_.value(Prefix(history.contexts(), lab)).log();
    if (v == kNegInf) continue;
    const double score = prediction.loss(y) + v;
    if (score > best) {
      best = score;
      arg = y;
    }
  }
  return arg;
}

namespace {

double regret_of(double learner, double best) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (best == kInf) return -kInf;
  return learner - best;
}

void check_symbol(int v, int size, const char* what, std::size_t round) {
  if (v < 0 || v >= size) {
    std::ostringstream os;
    os << "adversary emitted " << what << " " << v << " at round " << round
       << " outside alphabet of size " << size;
    throw ValidationError(os.str());
  }
}

}  // namespace

Transcript play_game(Forecaster& forecaster, Adversary& adversary, const HypothesisClass& cls,
                     int horizon) {
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  forecaster.reset();
  adversary.reset();
  Transcript tr;
  std::vector<double> expert_loss(cls.is_explicit() ? cls.size() : 0, 0.0);
  std::vector<double> buf(static_cast<std::size_t>(cls.labels()));
  for (int t = 0; t < horizon; ++t) {
    const int x = adversary.next_context(Prefix(tr.contexts, tr.labels));
    check_symbol(x, cls.contexts(), "context", static_cast<std::size_t>(t) + 1);
    tr.contexts.push_back(x);
    const Distribution p = forecaster.predict(x);
    if (p.size() != cls.labels()) throw ValidationError("forecaster predicts over the wrong labels");
    const int y = adversary.next_label(Prefix(tr.contexts, tr.labels), p);
    check_symbol(y, cls.labels(), "label", static_cast<std::size_t>(t) + 1);
    if (cls.is_explicit()) {
      for (std::size_t i = 0; i < cls.size(); ++i) {
        cls.experts()[i].predict(HistoryView{tr.contexts, tr.labels}, buf);
        const double q = buf[static_cast<std::size_t>(y)];
        expert_loss[i] += q > 0.0 ? -std::log(q) : std::numeric_limits<double>::infinity();
      }
    }
    forecaster.observe(y);
    tr.labels.push_back(y);
    tr.predictions.push_back(p);
    tr.losses.push_back(p.loss(y));
    tr.cumulative_loss += tr.losses.back();
  }
  tr.best_expert_loss = -cls.sup_log_likelihood(tr.contexts, tr.labels).value.log();
  tr.regret = regret_of(tr.cumulative_loss, tr.best_expert_loss);
  if (cls.is_explicit()) {
    double best = std::numeric_limits<double>::infinity();
    for (double l : expert_loss) best = std::min(best, l);
    tr.regret_incremental = regret_of(tr.cumulative_loss, best);
  } else {
    tr.regret_incremental = tr.regret;
  }
  return tr;
}

WorstRegretResult exhaustive_worst_regret(Forecaster& forecaster, const HypothesisClass& cls,
                                          int horizon, const ContextConstraint& constraint,
                                          std::uint64_t budget) {
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  const std::uint64_t step = static_cast<std::uint64_t>(cls.contexts()) *
                             static_cast<std::uint64_t>(cls.labels());
  const std::uint64_t total = saturating_pow(step, horizon);
  require_budget("context-label sequences", total, budget);
  WorstRegretResult best;
  bool found = false;
  std::vector<int> digits(static_cast<std::size_t>(horizon), 0);
  std::vector<int> ctx(digits.size());
  std::vector<int> lab(digits.size());
  for (std::uint64_t i = 0; i < total; ++i) {
    if (i > 0) {
      std::size_t d = digits.size();
      while (d-- > 0) {
        if (++digits[d] < static_cast<int>(step)) break;
        digits[d] = 0;
      }
    }
    bool admissible = true;
    for (std::size_t t = 0; t < digits.size() && admissible; ++t) {
      ctx[t] = digits[t] / cls.labels();
      lab[t] = digits[t] % cls.labels();
      if (!constraint.unconstrained()) {
        const std::uint64_t mask = constraint.allowed(std::span<const int>(ctx.data(), t),
                                                      std::span<const int>(lab.data(), t),
                                                      cls.contexts());
        admissible = (mask >> ctx[t]) & 1U;
      }
    }
    if (!admissible) continue;
    ++best.sequences;
    SequenceAdversary adv(ctx, lab);
    const Transcript tr = play_game(forecaster, adv, cls, horizon);
    if (!found || tr.regret > best.value) {
      best.value = tr.regret;
      best.contexts = ctx;
      best.labels = lab;
      found = true;
    }
  }
  return best;
}

}  // namespace shlab

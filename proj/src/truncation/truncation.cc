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


#include "shlab/truncation/truncation.h"

#include <algorithm>
#include <cmath>

#include "shlab/core/likelihood.h"
#include "shlab/game/game.h"
#include "shlab/shtarkov/worst_case.h"

namespace shlab {

void check_truncation_level(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw ValidationError("truncation level outside (0, 1/2)");
}

Distribution truncate_dist(const Distribution& p, double delta) {
  check_truncation_level(delta);
  const double denom = 1.0 + p.size() * delta;
  std::vector<double> q(p.probs().begin(), p.probs().end());
  for (double& v : q) v = (v + delta) / denom;
  return Distribution(std::move(q));
}

std::optional<Distribution> untruncate_dist(const Distribution& q, double delta, double tol) {
  check_truncation_level(delta);
  const double scale = 1.0 + q.size() * delta;
  std::vector<double> p(q.probs().begin(), q.probs().end());
  for (double& v : p) {
    v = v * scale - delta;
    if (v < -tol) return std::nullopt;
    v = std::max(v, 0.0);
  }
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return Distribution(std::move(p));
}

HypothesisClass truncate_class(const HypothesisClass& cls, double delta) {
  check_truncation_level(delta);
  if (!cls.is_explicit()) throw ValidationError("truncate_class needs an explicit class");
  return cls.map_experts([delta](const Expert& e) { return Expert::truncated(e, delta); },
                         cls.name() + "_truncated");
}

double truncation_loss_gap(const Distribution& p, int label, double delta) {
  const Distribution q = truncate_dist(p, delta);
  if (!(p[label] > 0.0)) return kNegInf;
  return q.loss(label) - p.loss(label);
}

double truncation_likelihood_gap(const Expert& f, std::span<const int> contexts,
                                 std::span<const int> labels, double delta) {
  const Expert g = Expert::truncated(f, delta);
  return likelihood(g, contexts, labels).linear() - likelihood(f, contexts, labels).linear();
}

std::uint64_t M_of_T(int horizon) {
  if (horizon < 0 || horizon >= 62) throw ValidationError("M(T) is defined here for 0 <= T < 62");
  return (std::uint64_t{1} << horizon) - 1;
}

std::vector<double> default_delta_grid() { return {0.1, 0.03, 0.01, 0.003, 0.001}; }

TruncationReport truncated_regret_gap_check(const HypothesisClass& cls, int horizon,
                                            const std::vector<double>& deltas,
                                            std::uint64_t budget) {
  if (deltas.empty()) throw ValidationError("delta grid is empty");
  TruncationReport rep;
  rep.horizon = horizon;
  const int K = cls.labels();
  const double regret = minimax_regret_exact(cls, horizon, {}, budget);
  const double log_sh = worst_case_shtarkov(cls, horizon).value.log();
  const double m = static_cast<double>(M_of_T(horizon));
  const double kt = std::pow(static_cast<double>(K), horizon);
  rep.all_hold = true;
  for (double delta : deltas) {
    const HypothesisClass tr = truncate_class(cls, delta);
    TruncationCheckEntry e;
    e.delta = delta;
    e.regret = regret;
    e.truncated_regret = minimax_regret_exact(tr, horizon, {}, budget);
    const double mix = horizon * std::log1p(K * delta);
    e.b2_slack = e.truncated_regret + mix - regret;
    e.b2_holds = e.b2_slack >= -1e-9;
    e.log_sh = log_sh;
    e.log_sh_truncated = worst_case_shtarkov(tr, horizon).value.log();
    const double inflated = std::log(std::exp(log_sh) + delta * m * kt);
    e.chain_bound = inflated + mix;
    e.chain_holds = regret <= e.chain_bound + 1e-9;
    e.shtarkov_side_holds = e.log_sh_truncated <= inflated + 1e-9;
    rep.all_hold = rep.all_hold && e.b2_holds && e.chain_holds && e.shtarkov_side_holds;
    rep.entries.push_back(e);
  }
  rep.b2_slack_monotone = true;
  rep.chain_monotone = true;
  for (std::size_t i = 1; i < rep.entries.size(); ++i) {
    const auto& a = rep.entries[i - 1];
    const auto& b = rep.entries[i];
    if (b.delta >= a.delta) continue;
    if (b.b2_slack > a.b2_slack + 1e-12) rep.b2_slack_monotone = false;
    if (b.chain_bound - regret > a.chain_bound - regret + 1e-12) rep.chain_monotone = false;
  }
  return rep;
}

}  // namespace shlab

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


#ifndef SHLAB_TRUNCATION_TRUNCATION_H_
#define SHLAB_TRUNCATION_TRUNCATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "shlab/core/distribution.h"
#include "shlab/core/errors.h"
#include "shlab/core/expert.h"
#include "shlab/core/hypothesis_class.h"

namespace shlab {

// Throws ValidationError unless 0 < delta < 1/2.
void check_truncation_level(double delta);

// T_delta(p)(y) = (p(y) + delta) / (1 + K delta).
Distribution truncate_dist(const Distribution& p, double delta);

// Inverse of truncate_dist on its image; nullopt when q lies outside it
// (some coordinate below delta / (1 + K delta) - tol).
std::optional<Distribution> untruncate_dist(const Distribution& q, double delta,
                                            double tol = 1e-12);

// Applies T_delta to every expert; explicit classes only.
HypothesisClass truncate_class(const HypothesisClass& cls, double delta);

// l(T_delta(p), y) - l(p, y). -inf when p(y) = 0, since the truncated loss is
// finite. Never exceeds log(1 + K delta).
double truncation_loss_gap(const Distribution& p, int label, double delta);

// L(f^delta; y | x) - L(f; y | x), linear domain.
double truncation_likelihood_gap(const Expert& f, std::span<const int> contexts,
                                 std::span<const int> labels, double delta);

// 2^T - 1. Throws ValidationError for T < 0 or T >= 62.
std::uint64_t M_of_T(int horizon);

std::vector<double> default_delta_grid();

struct TruncationCheckEntry {
  double delta = 0.0;
  double regret = 0.0;            // R_T(F)
  double truncated_regret = 0.0;  // R_T(F^delta)
  double b2_slack = 0.0;          // R_T(F^delta) + T log(1 + K delta) - R_T(F)
  bool b2_holds = false;
  double log_sh = 0.0;            // log Sh(F): worst-case sum
  double log_sh_truncated = 0.0;  // log Sh(F^delta)
  double chain_bound = 0.0;       // log(Sh(F) + delta M(T) K^T) + T log(1 + K delta)
  bool chain_holds = false;       // R_T(F) <= chain_bound
  bool shtarkov_side_holds = false;  // log Sh(F^delta) <= log(Sh(F) + delta M(T) K^T)
};

struct TruncationReport {
  int horizon = 0;
  std::vector<TruncationCheckEntry> entries;  // in the order of the grid
  bool all_hold = false;
  // Slacks are non-increasing as delta decreases along the grid.
  bool b2_slack_monotone = false;
  bool chain_monotone = false;
};

// Solves the game for F and each F^delta. Explicit classes only.
TruncationReport truncated_regret_gap_check(const HypothesisClass& cls, int horizon,
                                            const std::vector<double>& deltas,
                                            std::uint64_t budget = kDefaultBudget);

}  // namespace shlab

#endif  // SHLAB_TRUNCATION_TRUNCATION_H_

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

#ifndef SHLAB_CORE_FAMILIES_H_
#define SHLAB_CORE_FAMILIES_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "shlab/core/hypothesis_class.h"

namespace shlab {

// The full i.i.d. family over K labels (Bernoulli for K = 2), ignoring
// contexts. sup_p prod_t p(y_t) = prod_k (n_k / n)^{n_k}, attained at the
// empirical frequencies, which are returned as the witness parameter.
SupResult categorical_full_sup(std::span<const int> labels, int num_labels);

// Independent numeric route for the binary case: successive grid refinement
// of the concave profile n_1 log p + n_0 log(1 - p) on [0, 1].
SupResult bernoulli_refined_grid_sup(std::span<const int> labels, int rounds = 20);

HypothesisClass bernoulli_full_class(int labels = 2, int contexts = 1);

// Constant Bernoulli experts with P(1) = j / (points - 1), j = 0..points-1.
HypothesisClass bernoulli_grid_class(int points, int contexts = 1);

// One point-mass expert per sequence.
HypothesisClass pointmass_class(int labels, const std::vector<std::vector<int>>& sequences,
                                int contexts = 1);

// Deterministic uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng);
// Deterministic integer in [0, n) by rejection.
int uniform_int(std::mt19937_64& rng, int n);

struct RandomClassOptions {
  int labels = 2;
  int contexts = 1;
  int horizon = 2;
  int experts = 2;
  // Floor applied before normalization; > 0 gives strictly positive experts.
  double min_probability = 0.02;
  // Probability that a prediction row is replaced by a point mass.
  double point_mass_rate = 0.0;
  // Generate non-sequential (context-only) experts instead of full tables.
  bool non_sequential = false;
};

// Seeded random explicit class of table (or non-sequential) experts.
HypothesisClass random_explicit_class(const RandomClassOptions& options, std::uint64_t seed);

}  // namespace shlab

#endif  // SHLAB_CORE_FAMILIES_H_

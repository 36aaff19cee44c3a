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

#ifndef SHLAB_CORE_DISTRIBUTION_H_
#define SHLAB_CORE_DISTRIBUTION_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shlab {

inline constexpr double kDistributionTolerance = 1e-12;

// Returns an error message when `probs` is not a distribution: any negative
// or non-finite entry, or a total that misses 1 by more than the tolerance.
std::optional<std::string> check_distribution(std::span<const double> probs);

// A probability vector over labels 0..K-1.
class Distribution {
 public:
  // Throws ValidationError if check_distribution fails.
  explicit Distribution(std::vector<double> probs);

  static Distribution uniform(int labels);
  static Distribution point_mass(int labels, int label);
  // Binary distribution with P(label 1) = p.
  static Distribution bernoulli(double p);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int label) const { return probs_[static_cast<std::size_t>(label)]; }
  std::span<const double> probs() const { return probs_; }

  // Membership in the open simplex.
  bool strictly_positive() const;

  // Log loss -log p(y); +inf when p(y) = 0.
  double loss(int label) const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> probs_;
};

}  // namespace shlab

#endif  // SHLAB_CORE_DISTRIBUTION_H_

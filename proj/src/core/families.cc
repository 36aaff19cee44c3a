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

#include "shlab/core/families.h"

#include <cmath>
#include <limits>

#include "shlab/core/errors.h"

namespace shlab {

SupResult categorical_full_sup(std::span<const int> labels, int num_labels) {
  std::vector<double> counts(static_cast<std::size_t>(num_labels), 0.0);
  for (int y : labels) counts.at(static_cast<std::size_t>(y)) += 1.0;
  const double n = static_cast<double>(labels.size());
  SupResult r;
  r.value = LogValue::one();
  r.parameter.assign(static_cast<std::size_t>(num_labels), 1.0 / num_labels);
  if (labels.empty()) return r;
  double total = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] > 0.0) total += counts[k] * std::log(counts[k] / n);
    r.parameter[k] = counts[k] / n;
  }
  r.value = LogValue::from_log(total);
  return r;
}

namespace {

double bernoulli_profile(double n1, double n0, double p) {
  double v = 0.0;
  if (n1 > 0.0) v += p > 0.0 ? n1 * std::log(p) : kNegInf;
  if (n0 > 0.0 && v != kNegInf) v += p < 1.0 ? n0 * std::log1p(-p) : kNegInf;
  return v;
}

}  // namespace

SupResult bernoulli_refined_grid_sup(std::span<const int> labels, int rounds) {
  double n1 = 0.0;
  double n0 = 0.0;
  for (int y : labels) {
    if (y == 1) {
      n1 += 1.0;
    } else if (y == 0) {
      n0 += 1.0;
    } else {
      throw ValidationError("binary grid oracle received a non-binary label");
    }
  }
  constexpr int kPoints = 101;
  double lo = 0.0;
  double hi = 1.0;
  double best_p = 0.5;
  double best_v = bernoulli_profile(n1, n0, best_p);
  for (int r = 0; r < rounds; ++r) {
    const double step = (hi - lo) / (kPoints - 1);
    for (int i = 0; i < kPoints; ++i) {
      const double p = i == kPoints - 1 ? hi : lo + step * i;
      const double v = bernoulli_profile(n1, n0, p);
      if (v > best_v) {
        best_v = v;
        best_p = p;
      }
    }
    lo = std::max(0.0, best_p - step);
    hi = std::min(1.0, best_p + step);
  }
  SupResult out;
  out.value = LogValue::from_log(best_v);
  out.parameter = {1.0 - best_p, best_p};
  return out;
}

HypothesisClass bernoulli_full_class(int labels, int contexts) {
  if (labels < 2) throw ValidationError("full categorical class needs >= 2 labels");
  return HypothesisClass::oracle(
      labels, contexts, labels == 2 ? "bernoulli_full" : "categorical_full",
      [labels](std::span<const int>, std::span<const int> y) {
        return categorical_full_sup(y, labels);
      });
}

HypothesisClass bernoulli_grid_class(int points, int contexts) {
  if (points < 2) throw ValidationError("Bernoulli grid needs >= 2 points");
  std::vector<Expert> experts;
  for (int j = 0; j < points; ++j) {
    const double p = j == points - 1 ? 1.0 : static_cast<double>(j) / (points - 1);
    experts.push_back(Expert::constant(Distribution::bernoulli(p)));
  }
  return HypothesisClass::explicit_finite(2, contexts, std::move(experts), "bernoulli_grid");
}

HypothesisClass pointmass_class(int labels, const std::vector<std::vector<int>>& sequences,
                                int contexts) {
  std::vector<Expert> experts;
  for (const auto& s : sequences) experts.push_back(Expert::point_mass(labels, s));
  return HypothesisClass::explicit_finite(labels, contexts, std::move(experts), "pointmass");
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniform_int(std::mt19937_64& rng, int n) {
  if (n <= 0) throw ValidationError("uniform_int needs n > 0");
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return static_cast<int>(v % range);
}

namespace {

std::vector<double> random_row(std::mt19937_64& rng, const RandomClassOptions& o) {
  std::vector<double> row(static_cast<std::size_t>(o.labels));
  if (o.point_mass_rate > 0.0 && uniform01(rng) < o.point_mass_rate) {
    row[static_cast<std::size_t>(uniform_int(rng, o.labels))] = 1.0;
    return row;
  }
  double total = 0.0;
  for (double& p : row) {
    p = o.min_probability + uniform01(rng);
    total += p;
  }
  for (double& p : row) p /= total;
  return row;
}

}  // namespace

HypothesisClass random_explicit_class(const RandomClassOptions& options, std::uint64_t seed) {
  if (options.experts < 1) throw ValidationError("random class needs >= 1 expert");
  std::mt19937_64 rng(seed);
  std::vector<Expert> experts;
  for (int e = 0; e < options.experts; ++e) {
    if (options.non_sequential) {
      std::vector<Distribution> per;
      for (int x = 0; x < options.contexts; ++x) per.emplace_back(random_row(rng, options));
      experts.push_back(Expert::non_sequential(std::move(per)));
    } else {
      HistoryIndexer idx(options.labels, options.contexts, options.horizon);
      std::vector<double> probs;
      probs.reserve(idx.size() * static_cast<std::size_t>(options.labels));
      for (std::size_t h = 0; h < idx.size(); ++h) {
        const auto row = random_row(rng, options);
        probs.insert(probs.end(), row.begin(), row.end());
      }
      experts.push_back(
          Expert::table(options.labels, options.contexts, options.horizon, std::move(probs)));
    }
  }
  return HypothesisClass::explicit_finite(options.labels, options.contexts, std::move(experts),
                                          "random");
}

}  // namespace shlab

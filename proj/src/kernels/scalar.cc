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

#include <cmath>
#include <limits>

#include "shlab/kernels/kernels.h"

namespace shlab::kernels::scalar {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Neumaier update: keeps a running compensation term.
inline void neumaier_add(double x, double& sum, double& comp) {
  const double t = sum + x;
  if (std::fabs(sum) >= std::fabs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
}

}  // namespace

double max_value(std::span<const double> values) {
  double best = kNegInf;
  for (double v : values) {
    if (v > best) best = v;
  }
  return best;
}

void max_inplace(std::span<double> acc, std::span<const double> values) {
  const std::size_t n = acc.size() < values.size() ? acc.size() : values.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] > acc[i]) acc[i] = values[i];
  }
}

double log_sum_exp(std::span<const double> log_values) {
  const double m = max_value(log_values);
  if (m == kNegInf) return kNegInf;
  if (std::isinf(m)) return m;
  double sum = 0.0;
  double comp = 0.0;
  for (double v : log_values) {
    neumaier_add(std::exp(v - m), sum, comp);
  }
  return m + std::log(sum + comp);
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) neumaier_add(v, sum, comp);
  return sum + comp;
}

ExpMoments exp_moments(std::span<const double> log_values) {
  double s1 = 0.0, c1 = 0.0, s2 = 0.0, c2 = 0.0;
  for (double v : log_values) {
    const double e = std::exp(v);
    neumaier_add(e, s1, c1);
    neumaier_add(e * e, s2, c2);
  }
  return {s1 + c1, s2 + c2};
}

}  // namespace shlab::kernels::scalar

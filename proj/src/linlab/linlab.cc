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


#include "shlab/linlab/linlab.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "shlab/core/errors.h"
#include "shlab/core/history.h"
#include "shlab/shtarkov/sums.h"

namespace shlab {

Design orthonormal_design(int horizon, int dim) {
  if (horizon < 1) throw ValidationError("orthonormal design needs T >= 1");
  if (dim < horizon) {
    throw ValidationError("orthonormal design needs d >= T, got d = " + std::to_string(dim) +
                          ", T = " + std::to_string(horizon));
  }
  Design out(static_cast<std::size_t>(horizon), std::vector<double>(static_cast<std::size_t>(dim)));
  for (int t = 0; t < horizon; ++t) out[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] = 1.0;
  return out;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void project_ball(std::vector<double>& w) {
  const double n = std::sqrt(dot(w, w));
  if (n > 1.0) {
    for (double& v : w) v /= n;
  }
}

void check_labels(const Design& design, std::span<const int> labels) {
  if (labels.size() != design.size()) {
    throw ValidationError("need one label per design point");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) throw ValidationError("linear classes take binary labels");
  }
}

}  // namespace

bool is_orthonormal(const Design& design, double tol) {
  for (std::size_t i = 0; i < design.size(); ++i) {
    if (std::fabs(std::sqrt(dot(design[i], design[i])) - 1.0) > tol) return false;
    for (std::size_t j = i + 1; j < design.size(); ++j) {
      if (std::fabs(dot(design[i], design[j])) > tol) return false;
    }
  }
  return true;
}

double lin_eval(std::span<const double> w, std::span<const double> x) {
  return linear_rule_value(LinearVariant::kLin, w, x);
}

double abslin_eval(std::span<const double> w, std::span<const double> x) {
  return linear_rule_value(LinearVariant::kAbsLin, w, x);
}

namespace {

double lin_objective(const Design& design, std::span<const int> labels,
                     const std::vector<double>& w) {
  double v = 0.0;
  for (std::size_t t = 0; t < design.size(); ++t) {
    const double p = 0.5 * (1.0 + (2 * labels[t] - 1) * dot(w, design[t]));
    if (!(p > 0.0)) return kNegInf;
    v += std::log(std::min(p, 1.0));
  }
  return v;
}

std::vector<double> witness_weight(const Design& design, std::span<const int> labels) {
  const std::size_t dim = design.empty() ? 0 : design.front().size();
  std::vector<double> w(dim, 0.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(design.size()));
  for (std::size_t t = 0; t < design.size(); ++t) {
    if (design[t].size() != dim) throw ValidationError("design points differ in dimension");
    for (std::size_t i = 0; i < dim; ++i) w[i] += (2 * labels[t] - 1) * scale * design[t][i];
  }
  project_ball(w);
  return w;
}

}  // namespace

LinSupResult lin_sup_gradient(const Design& design, std::span<const int> labels,
                              const GradientOptions& options) {
  check_labels(design, labels);
  if (design.empty()) return {LogValue::one(), false, {}};
  std::vector<double> w = options.start.empty() ? witness_weight(design, labels) : options.start;
  if (w.size() != design.front().size()) throw ValidationError("start has the wrong dimension");
  project_ball(w);
  // A start on the boundary of the domain is pulled inward.
  while (lin_objective(design, labels, w) == kNegInf) {
    for (double& v : w) v *= 0.5;
  }
  LinSupResult best{LogValue::from_log(lin_objective(design, labels, w)), false, w};
  std::vector<double> grad(w.size());
  for (int k = 1; k <= options.iterations; ++k) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t t = 0; t < design.size(); ++t) {
      const double s = 2 * labels[t] - 1;
      const double denom = 1.0 + s * dot(w, design[t]);
      for (std::size_t i = 0; i < w.size(); ++i) grad[i] += s * design[t][i] / denom;
    }
    const double eta = options.step / std::sqrt(static_cast<double>(k));
    std::vector<double> next = w;
    for (std::size_t i = 0; i < w.size(); ++i) next[i] += eta * grad[i];
    project_ball(next);
    double moved = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) moved += (next[i] - w[i]) * (next[i] - w[i]);
    const double v = lin_objective(design, labels, next);
    if (v == kNegInf) break;
    w = std::move(next);
    if (v > best.value.log()) best = {LogValue::from_log(v), false, w};
    if (std::sqrt(moved) < options.tolerance) break;
  }
  return best;
}

LinSupResult lin_sup_likelihood(const Design& design, std::span<const int> labels) {
  check_labels(design, labels);
  if (design.empty()) return {LogValue::one(), true, {}};
  if (!is_orthonormal(design)) return lin_sup_gradient(design, labels);
  const double T = static_cast<double>(design.size());
  return {LogValue::from_log(T * std::log((1.0 + 1.0 / std::sqrt(T)) / 2.0)), true,
          witness_weight(design, labels)};
}

// ---------------------------------------------------------------------------
// Exact sup from per-context label counts.

namespace {

struct Group {
  double hi = 0.0;  // count pulling the coordinate up
  double lo = 0.0;  // count pulling it down
  double mult = 0.0;
};

// Lin: h(c) = hi log(1 + c) + lo log(1 - c) on [0, 1], with hi >= lo after
// mirroring. AbsLin: h(a) = hi log a + lo log(1 - a) on [0, 1].
double group_value(LinearVariant v, const Group& g, double c) {
  auto term = [](double n, double p) { return n > 0.0 ? n * std::log(p) : 0.0; };
  if (v == LinearVariant::kLin) return term(g.hi, 1.0 + c) + term(g.lo, 1.0 - c);
  return term(g.hi, c) + term(g.lo, 1.0 - c);
}

double unconstrained(LinearVariant v, const Group& g) {
  const double n = g.hi + g.lo;
  if (n == 0.0) return 0.0;
  return v == LinearVariant::kLin ? (g.hi - g.lo) / n : g.hi / n;
}

// Root of h'(c) = 2 lambda c on (0, c*], h' decreasing.
double coordinate(LinearVariant v, const Group& g, double lambda) {
  const double top = unconstrained(v, g);
  if (top <= 0.0 || lambda <= 0.0) return top;
  auto slope = [&](double c) {
    if (v == LinearVariant::kLin) {
      return g.hi / (1.0 + c) - (g.lo > 0.0 ? g.lo / (1.0 - c) : 0.0) - 2.0 * lambda * c;
    }
    return g.hi / c - (g.lo > 0.0 ? g.lo / (1.0 - c) : 0.0) - 2.0 * lambda * c;
  };
  if (slope(top) >= 0.0) return top;
  double a = 0.0;
  double b = top;
  for (int i = 0; i < 200 && b - a > 1e-17; ++i) {
    const double m = 0.5 * (a + b);
    (m > 0.0 && slope(m) > 0.0 ? a : b) = m;
  }
  return a;
}

double solve_groups(LinearVariant v, const std::vector<Group>& groups) {
  auto norm2 = [&](double lambda) {
    double s = 0.0;
    for (const Group& g : groups) {
      const double c = coordinate(v, g, lambda);
      s += g.mult * c * c;
    }
    return s;
  };
  double lambda = 0.0;
  if (norm2(0.0) > 1.0) {
    double lo = 0.0;
    double hi = 1.0;
    while (norm2(hi) > 1.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
      const double m = 0.5 * (lo + hi);
      (norm2(m) > 1.0 ? lo : hi) = m;
    }
    lambda = hi;  // feasible side
  }
  double total = 0.0;
  for (const Group& g : groups) total += g.mult * group_value(v, g, coordinate(v, g, lambda));
  return total;
}

}  // namespace

double linear_counts_sup(LinearVariant variant, std::span<const double> n1,
                         std::span<const double> n0) {
  if (n1.size() != n0.size()) throw ValidationError("count vectors differ in length");
  std::map<std::pair<double, double>, double> grouped;
  double total = 0.0;
  for (std::size_t x = 0; x < n1.size(); ++x) {
    if (n1[x] < 0.0 || n0[x] < 0.0) throw ValidationError("negative label count");
    total += n1[x] + n0[x];
    if (n1[x] + n0[x] == 0.0) continue;
    std::pair<double, double> key{n1[x], n0[x]};
    if (variant == LinearVariant::kLin && n0[x] > n1[x]) key = {n0[x], n1[x]};
    grouped[key] += 1.0;
  }
  std::vector<Group> groups;
  for (const auto& [k, m] : grouped) groups.push_back({k.first, k.second, m});
  const double v = solve_groups(variant, groups);
  return variant == LinearVariant::kLin ? v - total * std::log(2.0) : v;
}

HypothesisClass linear_class(std::shared_ptr<const Design> design, LinearVariant variant) {
  if (!design || design->empty()) throw ValidationError("linear class needs a nonempty design");
  if (!is_orthonormal(*design)) {
    throw ValidationError("the exact linear oracle needs an orthonormal design");
  }
  const std::size_t n = design->size();
  auto cache = std::make_shared<std::map<std::vector<double>, double>>();
  auto lock = std::make_shared<std::mutex>();
  auto oracle = [variant, n, cache, lock](std::span<const int> ctx, std::span<const int> lab) {
    std::vector<double> n1(n, 0.0);
    std::vector<double> n0(n, 0.0);
    for (std::size_t t = 0; t < ctx.size(); ++t) {
      (lab[t] == 1 ? n1 : n0)[static_cast<std::size_t>(ctx[t])] += 1.0;
    }
    // The value only depends on the multiset of (n1, n0) pairs.
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t x = 0; x < n; ++x) {
      if (n1[x] + n0[x] == 0.0) continue;
      if (variant == LinearVariant::kLin && n0[x] > n1[x]) {
        pairs.emplace_back(n0[x], n1[x]);
      } else {
        pairs.emplace_back(n1[x], n0[x]);
      }
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<double> key;
    for (const auto& [a, b] : pairs) {
      key.push_back(a);
      key.push_back(b);
    }
    SupResult r;
    {
      std::lock_guard<std::mutex> g(*lock);
      if (auto it = cache->find(key); it != cache->end()) {
        r.value = LogValue::from_log(it->second);
        return r;
      }
    }
    const double v = linear_counts_sup(variant, n1, n0);
    {
      std::lock_guard<std::mutex> g(*lock);
      cache->emplace(std::move(key), v);
    }
    r.value = LogValue::from_log(v);
    return r;
  };
  return HypothesisClass::oracle(2, static_cast<int>(n),
                                 variant == LinearVariant::kLin ? "linear" : "abs_linear",
                                 std::move(oracle));
}

LinLowerBoundReport lin_lower_bound_experiment(int horizon, int dim, std::uint64_t budget) {
  auto design = std::make_shared<const Design>(orthonormal_design(horizon, dim));
  LinLowerBoundReport r;
  r.horizon = horizon;
  r.dim = dim;
  r.paths = saturating_pow(2, horizon);
  require_budget("label paths", r.paths, budget);
  std::vector<int> contexts(static_cast<std::size_t>(horizon));
  for (int t = 0; t < horizon; ++t) contexts[static_cast<std::size_t>(t)] = t;
  r.conditional_shtarkov_log = shtarkov_conditional(linear_class(design), contexts, budget).log();
  const double T = static_cast<double>(horizon);
  r.lower_bound = T * std::log1p(1.0 / std::sqrt(T));
  r.quarter_sqrt_t = std::sqrt(T) / 4.0;
  r.chain_holds =
      r.conditional_shtarkov_log >= r.lower_bound - 1e-9 && r.lower_bound >= r.quarter_sqrt_t;
  return r;
}

std::vector<std::vector<double>> weight_grid(int dim, int steps) {
  if (dim < 1 || steps < 1) throw ValidationError("weight grid needs dim >= 1 and steps >= 1");
  require_budget("weight grid points", saturating_pow(static_cast<std::uint64_t>(steps) + 1, dim),
                 1'000'000);
  std::vector<std::vector<double>> out;
  std::vector<int> k(static_cast<std::size_t>(dim), 0);
  while (true) {
    std::vector<double> w(k.size());
    double n2 = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      w[i] = -1.0 + 2.0 * k[i] / steps;
      n2 += w[i] * w[i];
    }
    if (n2 <= 1.0 + 1e-12) out.push_back(std::move(w));
    std::size_t d = k.size();
    while (d > 0) {
      if (++k[d - 1] <= steps) break;
      k[--d] = 0;
    }
    if (d == 0) break;
  }
  return out;
}

HypothesisClass linear_grid_class(std::shared_ptr<const Design> design, LinearVariant variant,
                                  int steps) {
  if (!design || design->empty()) throw ValidationError("linear class needs a nonempty design");
  std::vector<Expert> experts;
  for (auto& w : weight_grid(static_cast<int>(design->front().size()), steps)) {
    experts.push_back(Expert::linear(variant, std::move(w), design));
  }
  return HypothesisClass::explicit_finite(
      2, static_cast<int>(design->size()), std::move(experts),
      variant == LinearVariant::kLin ? "linear_grid" : "abs_linear_grid");
}

RealFunctionClass linear_grid_functions(const Design& design, LinearVariant variant, int steps) {
  if (design.empty()) throw ValidationError("linear class needs a nonempty design");
  std::vector<std::vector<double>> rows;
  for (const auto& w : weight_grid(static_cast<int>(design.front().size()), steps)) {
    std::vector<double> row;
    for (const auto& x : design) row.push_back(linear_rule_value(variant, w, x));
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(std::move(row));
  }
  return RealFunctionClass(std::move(rows));
}

}  // namespace shlab

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


#include "shlab/shtarkov/sums.h"

#include <cmath>
#include <random>

#include "shlab/core/errors.h"
#include "shlab/core/families.h"
#include "shlab/core/likelihood.h"
#include "shlab/kernels/kernels.h"

namespace shlab {

namespace {

void check_tree(const HypothesisClass& cls, const ContextTree& tree) {
  if (tree.labels() != cls.labels()) throw ValidationError("tree arity differs from label count");
  if (tree.max_context() >= cls.contexts()) {
    throw ValidationError("tree plays a context outside the class alphabet");
  }
}

// Writes log L(f; prefix + y | prefix + x(y)) for every continuation y.
void expert_paths(const Expert& f, const ContextTree& tree, std::vector<int>& ctx,
                  std::vector<int>& lab, std::vector<int>& path, double log_mass,
                  std::vector<double>& buf, std::span<double> out) {
  const int K = f.labels();
  if (path.size() == static_cast<std::size_t>(tree.depth())) {
    out[path_code(path, K)] = log_mass;
    return;
  }
  if (log_mass == kNegInf) {
    // Every continuation is dead; fill the whole subtree.
    const std::size_t remaining = path_count(K, tree.depth() - static_cast<int>(path.size()));
    const std::size_t first = path_code(path, K) * remaining;
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(first), remaining, kNegInf);
    return;
  }
  ctx.push_back(tree.context_at(path));
  f.predict(HistoryView{ctx, lab}, buf);
  const std::vector<double> p(buf.begin(), buf.end());
  for (int y = 0; y < K; ++y) {
    const double py = p[static_cast<std::size_t>(y)];
    lab.push_back(y);
    path.push_back(y);
    expert_paths(f, tree, ctx, lab, path, py > 0.0 ? log_mass + std::log(py) : kNegInf, buf, out);
    path.pop_back();
    lab.pop_back();
  }
  ctx.pop_back();
}

}  // namespace

std::vector<double> path_sup_values(const HypothesisClass& cls, const ContextTree& tree,
                                    const Prefix& prefix, std::uint64_t budget) {
  check_tree(cls, tree);
  if (!prefix.complete()) throw ValidationError("Shtarkov prefix must be complete");
  prefix.validate(cls.labels(), cls.contexts());
  const int K = cls.labels();
  const std::uint64_t paths = saturating_pow(static_cast<std::uint64_t>(K), tree.depth());
  require_budget("label paths", paths, budget);
  std::vector<double> acc(static_cast<std::size_t>(paths), kNegInf);

  if (cls.is_explicit()) {
    std::vector<double> cur(acc.size());
    std::vector<double> buf(static_cast<std::size_t>(K));
    for (const Expert& f : cls.experts()) {
      std::vector<int> ctx = prefix.contexts();
      std::vector<int> lab = prefix.labels();
      std::vector<int> path;
      const double base = likelihood(f, ctx, lab).log();
      expert_paths(f, tree, ctx, lab, path, base, buf, cur);
      kernels::max_inplace(acc, cur);
    }
    return acc;
  }

  const std::size_t t = prefix.length();
  std::vector<int> ctx = prefix.contexts();
  std::vector<int> lab = prefix.labels();
  ctx.resize(t + static_cast<std::size_t>(tree.depth()));
  lab.resize(ctx.size());
  std::vector<int> path(static_cast<std::size_t>(tree.depth()));
  for (std::size_t code = 0; code < acc.size(); ++code) {
    decode_path(code, K, path);
    const std::vector<int> xs = tree.contexts_along(path);
    for (std::size_t s = 0; s < path.size(); ++s) {
      ctx[t + s] = xs[s];
      lab[t + s] = path[s];
    }
    acc[code] = cls.sup_log_likelihood(ctx, lab).value.log();
  }
  return acc;
}

LogValue shtarkov_contextfree(const HypothesisClass& cls, int horizon, std::uint64_t budget) {
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  const std::vector<int> zeros(static_cast<std::size_t>(horizon), 0);
  return shtarkov_contextual(cls, ContextTree::constant(cls.labels(), zeros), budget);
}

LogValue shtarkov_conditional(const HypothesisClass& cls, std::span<const int> contexts,
                              std::uint64_t budget) {
  return shtarkov_contextual(cls, ContextTree::constant(cls.labels(), contexts), budget);
}

LogValue shtarkov_contextual(const HypothesisClass& cls, const ContextTree& tree,
                             std::uint64_t budget) {
  return LogValue::from_log(kernels::log_sum_exp(path_sup_values(cls, tree, {}, budget)));
}

LogValue shtarkov_prefix(const HypothesisClass& cls, const ContextTree& tree, const Prefix& prefix,
                         int horizon, std::uint64_t budget) {
  if (static_cast<int>(prefix.length()) + tree.depth() != horizon) {
    throw ValidationError("prefix length plus tree depth must equal the horizon");
  }
  return LogValue::from_log(kernels::log_sum_exp(path_sup_values(cls, tree, prefix, budget)));
}

McEstimate shtarkov_mc_estimate(const HypothesisClass& cls, const ContextTree& tree,
                                std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("Monte Carlo needs at least one sample");
  check_tree(cls, tree);
  const int K = cls.labels();
  const int T = tree.depth();
  const double shift = T * std::log(static_cast<double>(K));
  const std::uint64_t paths = saturating_pow(static_cast<std::uint64_t>(K), T);

  // Small path spaces: tabulate the integrand once and sample path codes.
  std::vector<double> table;
  constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;
  if (paths <= kTableLimit) table = path_sup_values(cls, tree, {}, kTableLimit);

  std::mt19937_64 rng(seed);
  std::vector<double> draws(static_cast<std::size_t>(samples));
  std::vector<int> path(static_cast<std::size_t>(T));
  for (auto& d : draws) {
    for (int& y : path) y = uniform_int(rng, K);
    double v;
    if (!table.empty()) {
      v = table[path_code(path, K)];
    } else {
      v = cls.sup_log_likelihood(tree.contexts_along(path), path).value.log();
    }
    d = log_mul(shift, v);
  }
  const kernels::ExpMoments m = kernels::exp_moments(draws);
  McEstimate out;
  out.samples = samples;
  const double n = static_cast<double>(samples);
  out.estimate = m.sum / n;
  if (samples > 1) {
    const double var = std::max(0.0, (m.sum_squares - m.sum * m.sum / n) / (n - 1.0));
    out.standard_error = std::sqrt(var / n);
  }
  return out;
}

}  // namespace shlab

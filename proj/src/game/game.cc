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


#include "shlab/game/game.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "shlab/core/likelihood.h"
#include "shlab/kernels/kernels.h"
#include "shlab/shtarkov/sums.h"
#include "shlab/shtarkov/worst_case.h"

namespace shlab {

namespace {

std::uint64_t game_leaves(const HypothesisClass& cls, int horizon) {
  return saturating_pow(static_cast<std::uint64_t>(cls.contexts()) *
                            static_cast<std::uint64_t>(cls.labels()),
                        horizon);
}

std::uint64_t internal_nodes(const HypothesisClass& cls, int horizon) {
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  const std::uint64_t step = static_cast<std::uint64_t>(cls.contexts() * cls.labels());
  for (int t = 0; t < horizon; ++t) {
    total = saturating_add(total, level);
    level = saturating_mul(level, step);
  }
  return total;
}

// Learner's best response to continuation values G, closed form.
double closed_form_inf(std::span<const double> g) {
  const double m = kernels::max_value(g);
  if (m == kNegInf) return kNegInf;
  std::vector<double> w(g.size());
  for (std::size_t y = 0; y < g.size(); ++y) w[y] = g[y] == kNegInf ? 0.0 : std::exp(g[y] - m);
  const double z = kernels::compensated_sum(w);
  double worst = kNegInf;
  for (std::size_t y = 0; y < g.size(); ++y) {
    if (g[y] == kNegInf) continue;
    const double p = w[y] / z;
    worst = std::max(worst, -std::log(p) + g[y]);
  }
  return worst;
}

// Minimum over lattice points of max_y [-log p(y) + G(y)].
struct Lattice {
  int labels;
  std::vector<double> neg_log;  // point-major, labels entries per point
  std::size_t points() const { return neg_log.size() / static_cast<std::size_t>(labels); }
};

void lattice_points(int labels, int steps, std::vector<int>& cur, int left, Lattice& out) {
  if (static_cast<int>(cur.size()) == labels - 1) {
    cur.push_back(left);
    for (int n : cur) {
      out.neg_log.push_back(n == 0 ? std::numeric_limits<double>::infinity()
                                   : -std::log(static_cast<double>(n) / steps));
    }
    cur.pop_back();
    return;
  }
  for (int n = 0; n <= left; ++n) {
    cur.push_back(n);
    lattice_points(labels, steps, cur, left - n, out);
    cur.pop_back();
  }
}

double lattice_inf(const Lattice& lat, std::span<const double> g) {
  bool alive = false;
  for (double v : g) alive = alive || v != kNegInf;
  if (!alive) return kNegInf;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t K = static_cast<std::size_t>(lat.labels);
  for (std::size_t i = 0; i < lat.points(); ++i) {
    double worst = kNegInf;
    for (std::size_t y = 0; y < K; ++y) {
      if (g[y] == kNegInf) continue;
      worst = std::max(worst, lat.neg_log[i * K + y] + g[y]);
    }
    best = std::min(best, worst);
  }
  return best;
}

// Primal backward induction over the full game tree.
class PrimalGame {
 public:
  PrimalGame(const HypothesisClass& cls, int horizon, const ContextConstraint& constraint,
             const Lattice* lattice)
      : cls_(cls), horizon_(horizon), constraint_(constraint), lattice_(lattice) {}

  double run() {
    std::vector<int> ctx;
    std::vector<int> lab;
    std::vector<double> cum;
    if (cls_.is_explicit()) cum.assign(cls_.size(), 0.0);
    return node(ctx, lab, cum);
  }

 private:
  double node(std::vector<int>& ctx, std::vector<int>& lab, const std::vector<double>& cum) {
    if (lab.size() == static_cast<std::size_t>(horizon_)) {
      if (!cls_.is_explicit()) return cls_.sup_log_likelihood(ctx, lab).value.log();
      return kernels::max_value(cum);
    }
    const int K = cls_.labels();
    const std::uint64_t mask = constraint_.allowed(ctx, lab, cls_.contexts());
    bool first = true;
    double best = kNegInf;
    std::vector<double> g(static_cast<std::size_t>(K));
    std::vector<double> p(static_cast<std::size_t>(K));
    std::vector<std::vector<double>> preds;
    for (int x = 0; x < cls_.contexts(); ++x) {
      if (!((mask >> x) & 1U)) continue;
      ctx.push_back(x);
      if (cls_.is_explicit()) {
        preds.assign(cls_.size(), std::vector<double>(static_cast<std::size_t>(K)));
        for (std::size_t i = 0; i < cls_.size(); ++i) {
          if (cum[i] != kNegInf) cls_.experts()[i].predict(HistoryView{ctx, lab}, preds[i]);
        }
      }
      for (int y = 0; y < K; ++y) {
        std::vector<double> next;
        if (cls_.is_explicit()) {
          next = cum;
          for (std::size_t i = 0; i < cls_.size(); ++i) {
            if (next[i] == kNegInf) continue;
            const double q = preds[i][static_cast<std::size_t>(y)];
            next[i] = q > 0.0 ? next[i] + std::log(q) : kNegInf;
          }
        }
        lab.push_back(y);
        g[static_cast<std::size_t>(y)] = node(ctx, lab, next);
        lab.pop_back();
      }
      ctx.pop_back();
      const double v = lattice_ ? lattice_inf(*lattice_, g) : closed_form_inf(g);
      if (first || v > best) {
        best = v;
        first = false;
      }
    }
    return best;
  }

  const HypothesisClass& cls_;
  int horizon_;
  const ContextConstraint& constraint_;
  const Lattice* lattice_;
};

}  // namespace

double minimax_regret_exact(const HypothesisClass& cls, int horizon,
                            const ContextConstraint& constraint, std::uint64_t budget) {
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  full_context_mask(cls.contexts());
  require_budget("game tree leaves", game_leaves(cls, horizon), budget);
  return PrimalGame(cls, horizon, constraint, nullptr).run();
}

std::uint64_t simplex_lattice_size(int labels, int steps) {
  // C(steps + labels - 1, labels - 1), saturating.
  std::uint64_t r = 1;
  for (int i = 1; i < labels; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(steps + i);
    if (r > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

double minimax_regret_grid(const HypothesisClass& cls, int horizon, double h,
                           const ContextConstraint& constraint, std::uint64_t budget) {
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  if (!(h > 0.0 && h <= 0.1)) throw ValidationError("grid resolution must lie in (0, 0.1]");
  const double inv = 1.0 / h;
  const long steps = std::lround(inv);
  if (std::fabs(steps * h - 1.0) > 1e-9) {
    throw ValidationError("grid resolution must divide 1");
  }
  full_context_mask(cls.contexts());
  const std::uint64_t points = simplex_lattice_size(cls.labels(), static_cast<int>(steps));
  const std::uint64_t nodes = saturating_mul(internal_nodes(cls, horizon),
                                             static_cast<std::uint64_t>(cls.contexts()));
  require_budget("simplex grid evaluations", saturating_mul(points, nodes), budget);
  Lattice lat{cls.labels(), {}};
  lat.neg_log.reserve(static_cast<std::size_t>(points) * static_cast<std::size_t>(cls.labels()));
  std::vector<int> cur;
  lattice_points(cls.labels(), static_cast<int>(steps), cur, static_cast<int>(steps), lat);
  return PrimalGame(cls, horizon, constraint, &lat).run();
}

namespace {

// Linear-domain recursion D(h) = max_x sum_y D(h x y), D(leaf) = sup L.
class DualGame {
 public:
  DualGame(const HypothesisClass& cls, int horizon, const ContextConstraint& constraint)
      : cls_(cls), horizon_(horizon), constraint_(constraint) {}

  double node(std::vector<int>& ctx, std::vector<int>& lab) {
    if (lab.size() == static_cast<std::size_t>(horizon_)) {
      return std::exp(cls_.sup_log_likelihood(ctx, lab).value.log());
    }
    const std::uint64_t mask = constraint_.allowed(ctx, lab, cls_.contexts());
    int arg = -1;
    double best = 0.0;
    std::vector<double> terms(static_cast<std::size_t>(cls_.labels()));
    for (int x = 0; x < cls_.contexts(); ++x) {
      if (!((mask >> x) & 1U)) continue;
      ctx.push_back(x);
      for (int y = 0; y < cls_.labels(); ++y) {
        lab.push_back(y);
        terms[static_cast<std::size_t>(y)] = node(ctx, lab);
        lab.pop_back();
      }
      ctx.pop_back();
      const double v = kernels::compensated_sum(terms);
      if (arg < 0 || v > best) {
        best = v;
        arg = x;
      }
    }
    argmax_[history_key(ctx, lab)] = arg;
    return best;
  }

  int argmax(const std::vector<int>& ctx, const std::vector<int>& lab) const {
    return argmax_.at(history_key(ctx, lab));
  }

 private:
  static std::vector<int> history_key(const std::vector<int>& ctx, const std::vector<int>& lab) {
    std::vector<int> k;
    k.reserve(ctx.size() * 2);
    for (std::size_t s = 0; s < ctx.size(); ++s) {
      k.push_back(ctx[s]);
      k.push_back(lab[s]);
    }
    return k;
  }

  struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
      std::size_t h = 1469598103934665603ULL;
      for (int x : v) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ULL;
      return h;
    }
  };

  const HypothesisClass& cls_;
  int horizon_;
  const ContextConstraint& constraint_;
  std::unordered_map<std::vector<int>, int, VecHash> argmax_;
};

}  // namespace

DualGameResult dual_game_value(const HypothesisClass& cls, int horizon,
                               const ContextConstraint& constraint, std::uint64_t budget) {
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  full_context_mask(cls.contexts());
  require_budget("game tree leaves", game_leaves(cls, horizon), budget);
  DualGame game(cls, horizon, constraint);
  std::vector<int> ctx;
  std::vector<int> lab;
  const double total = game.node(ctx, lab);

  DualGameResult r;
  r.value = total > 0.0 ? std::log(total) : kNegInf;
  const int K = cls.labels();
  std::vector<int> nodes(ContextTree::node_count(K, horizon), 0);
  std::vector<int> path;
  for (int s = 0; s < horizon; ++s) {
    const std::size_t base = ContextTree::level_offset(K, s);
    path.assign(static_cast<std::size_t>(s), 0);
    for (std::size_t code = 0; code < path_count(K, s); ++code) {
      decode_path(code, K, path);
      std::vector<int> c;
      std::size_t off = 0;
      std::size_t width = 1;
      std::size_t sub = 0;
      for (int q = 0; q < s; ++q) {
        c.push_back(nodes[off + sub]);
        off += width;
        width *= static_cast<std::size_t>(K);
        sub = sub * static_cast<std::size_t>(K) + static_cast<std::size_t>(path[static_cast<std::size_t>(q)]);
      }
      nodes[base + code] = game.argmax(c, path);
    }
  }
  r.tree = ContextTree(K, horizon, std::move(nodes));
  r.path_scores = path_sup_values(cls, r.tree);
  r.distribution.assign(r.path_scores.size(), 0.0);
  const double lse = kernels::log_sum_exp(r.path_scores);
  std::vector<double> ent_terms;
  std::vector<double> exp_terms;
  for (std::size_t i = 0; i < r.path_scores.size(); ++i) {
    if (r.path_scores[i] == kNegInf || lse == kNegInf) continue;
    const double logp = r.path_scores[i] - lse;
    const double p = std::exp(logp);
    r.distribution[i] = p;
    ent_terms.push_back(-p * logp);
    exp_terms.push_back(p * r.path_scores[i]);
  }
  r.entropy = kernels::compensated_sum(ent_terms);
  r.expected_score = kernels::compensated_sum(exp_terms);
  return r;
}

FixedDesignResult fixed_design_value(const HypothesisClass& cls, int horizon,
                                     std::uint64_t budget) {
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  const std::uint64_t total = saturating_pow(static_cast<std::uint64_t>(cls.contexts()), horizon);
  require_budget("context sequences", total, budget);
  std::vector<int> seq(static_cast<std::size_t>(horizon), 0);
  FixedDesignResult r;
  bool found = false;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (i > 0) {
      std::size_t d = seq.size();
      while (d-- > 0) {
        if (++seq[d] < cls.contexts()) break;
        seq[d] = 0;
      }
    }
    const double v = shtarkov_conditional(cls, seq).log();
    if (!found || v > r.value) {
      r.value = v;
      r.contexts = seq;
      found = true;
    }
  }
  return r;
}

GameValueReport solve_game(const HypothesisClass& cls, int horizon, std::optional<double> grid,
                           const ContextConstraint& constraint, std::uint64_t budget,
                           std::uint64_t grid_budget) {
  GameValueReport r;
  r.primal_value = minimax_regret_exact(cls, horizon, constraint, budget);
  r.dual_value = dual_game_value(cls, horizon, constraint, budget).value;
  r.worstcase_shtarkov =
      worst_case_shtarkov(cls, horizon, {}, constraint, std::max<std::uint64_t>(budget, 1)).value.log();
  std::vector<double> vals{r.primal_value, r.dual_value, r.worstcase_shtarkov};
  if (grid) {
    r.grid_value = minimax_regret_grid(cls, horizon, *grid, constraint, grid_budget);
    vals.push_back(*r.grid_value);
  }
  double gap = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    for (std::size_t j = i + 1; j < vals.size(); ++j) {
      if (vals[i] == vals[j]) continue;
      gap = std::max(gap, std::fabs(vals[i] - vals[j]));
    }
  }
  r.max_abs_gap = gap;
  return r;
}

}  // namespace shlab

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

#include "shlab/verify/suite.h"

#include <cmath>
#include <functional>
#include <exception>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "shlab/cnml/forecaster.h"
#include "shlab/cnml/play.h"
#include "shlab/core/families.h"
#include "shlab/core/likelihood.h"
#include "shlab/covers/bounds.h"
#include "shlab/covers/covers.h"
#include "shlab/game/game.h"
#include "shlab/io/report.h"
#include "shlab/linlab/linlab.h"
#include "shlab/shtarkov/subprob.h"
#include "shlab/shtarkov/sums.h"
#include "shlab/shtarkov/worst_case.h"
#include "shlab/truncation/truncation.h"

namespace shlab::verify {

namespace {

constexpr double kTight = 1e-12;

std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + i + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Accumulates comparisons for one entry; the first failure is kept.
class Tally {
 public:
  explicit Tally(SuiteEntry& e) : e_(e) {}

  void equal(double got, double want, double tol, const std::string& what) {
    ++e_.cases;
    double err = std::fabs(got - want);
    if (got == want) err = 0.0;  // equal infinities
    if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
    if (err > e_.max_error) e_.max_error = err;
    if (!(err <= tol)) fail(what, got, want);
  }

  // got <= bound + tol.
  void at_most(double got, double bound, double tol, const std::string& what) {
    ++e_.cases;
    if (!(got <= bound + tol)) fail(what, got, bound);
  }

  void holds(bool ok, const std::string& what) {
    ++e_.cases;
    if (!ok && e_.status != Status::kFail) {
      e_.status = Status::kFail;
      e_.detail = what;
    }
  }

 private:
  void fail(const std::string& what, double got, double want) {
    if (e_.status == Status::kFail) return;
    e_.status = Status::kFail;
    std::ostringstream os;
    os.precision(17);
    os << what << ": got " << got << ", expected " << want;
    e_.detail = os.str();
  }

  SuiteEntry& e_;
};

struct Instance {
  std::string name;
  HypothesisClass cls;
  int horizon;
};

// Seeded strictly positive explicit classes with |X| <= 2, K <= 3, T <= 3.
std::vector<Instance> random_instances(std::uint64_t seed, int count, bool positive = true) {
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) {
    RandomClassOptions o;
    o.labels = 2 + i % 2;
    o.contexts = 1 + (i / 2) % 2;
    o.horizon = 1 + (i / 4) % 3;
    o.experts = 2 + i % 3;
    o.non_sequential = i % 5 == 4;
    if (!positive) {
      o.min_probability = 0.0;
      o.point_mass_rate = 0.25;
    }
    std::ostringstream name;
    name << "random#" << i << " (K=" << o.labels << ", X=" << o.contexts << ", T=" << o.horizon
         << ")";
    out.push_back({name.str(), random_explicit_class(o, mix(seed, static_cast<std::uint64_t>(i))),
                   o.horizon});
  }
  return out;
}

// Context trees by mixed-radix index, node 0 most significant.
ContextTree tree_from_index(std::uint64_t index, int contexts, int labels, int depth) {
  std::vector<int> nodes(ContextTree::node_count(labels, depth));
  for (std::size_t i = nodes.size(); i-- > 0;) {
    nodes[i] = static_cast<int>(index % static_cast<std::uint64_t>(contexts));
    index /= static_cast<std::uint64_t>(contexts);
  }
  return ContextTree(labels, depth, std::move(nodes));
}

ContextTree random_tree(std::mt19937_64& rng, int contexts, int labels, int depth) {
  std::vector<int> nodes(ContextTree::node_count(labels, depth));
  for (int& x : nodes) x = uniform_int(rng, contexts);
  return ContextTree(labels, depth, std::move(nodes));
}

std::vector<std::vector<int>> all_sequences(int alphabet, int length) {
  std::vector<std::vector<int>> out;
  const std::size_t n = path_count(alphabet, length);
  for (std::size_t code = 0; code < n; ++code) {
    std::vector<int> s(static_cast<std::size_t>(length));
    decode_path(code, alphabet, s);
    out.push_back(std::move(s));
  }
  return out;
}

RealFunctionClass random_functions(std::mt19937_64& rng, int functions, int contexts) {
  std::vector<std::vector<double>> v(static_cast<std::size_t>(functions));
  for (auto& row : v) {
    row.resize(static_cast<std::size_t>(contexts));
    for (double& x : row) x = uniform01(rng);
  }
  return RealFunctionClass(std::move(v));
}

struct BoundCase {
  std::string name;
  RealFunctionClass cls;
  int horizon;
  BoundReport report;
};

struct Env {
  const SuiteConfig& cfg;
  // Shared by three entries; computed on first use. A budget error is kept
  // and rethrown so that every dependent entry is skipped.
  mutable std::optional<std::vector<BoundCase>> bounds;
  mutable std::exception_ptr bounds_error;
};

// ---------------------------------------------------------------------------
// Entries

void minimax_equals_worst_case(const Env& env, Tally& t) {
  for (const auto& in : random_instances(env.cfg.seed, 40)) {
    const double wc = worst_case_shtarkov(in.cls, in.horizon, {}, {}, env.cfg.budget_seqs).value.log();
    t.equal(minimax_regret_exact(in.cls, in.horizon, {}, env.cfg.budget_seqs), wc,
            env.cfg.tolerance, in.name + " primal game");
    t.equal(dual_game_value(in.cls, in.horizon, {}, env.cfg.budget_seqs).value, wc,
            env.cfg.tolerance, in.name + " dual game");
    t.equal(worst_case_shtarkov_bruteforce(in.cls, in.horizon, {}, {}, env.cfg.budget_trees)
                .value.log(),
            wc, env.cfg.tolerance, in.name + " brute-force trees");
  }
}

void cnml_attains_minimax(const Env& env, Tally& t) {
  for (const auto& in : random_instances(env.cfg.seed, 24)) {
    const double exact = minimax_regret_exact(in.cls, in.horizon, {}, env.cfg.budget_seqs);
    CnmlForecaster cnml(in.cls, in.horizon, {}, env.cfg.budget_seqs);
    const double worst = exhaustive_worst_regret(cnml, in.cls, in.horizon, {}, env.cfg.budget_seqs).value;
    t.equal(worst, exact, env.cfg.tolerance, in.name + " cnml worst regret");
    UniformForecaster uniform(in.cls.labels());
    BayesMixtureForecaster bayes(in.cls);
    for (Forecaster* f : std::initializer_list<Forecaster*>{&uniform, &bayes}) {
      const double b = exhaustive_worst_regret(*f, in.cls, in.horizon, {}, env.cfg.budget_seqs).value;
      t.at_most(worst, b, env.cfg.tolerance, in.name + " " + f->name() + " beats cnml");
    }
  }
}

void nml_equalizes_contextfree(const Env& env, Tally& t) {
  int n = 0;
  for (const auto& in : random_instances(env.cfg.seed + 1, 24)) {
    if (in.cls.contexts() != 1) continue;
    ++n;
    const double sh = shtarkov_contextfree(in.cls, in.horizon, env.cfg.budget_seqs).log();
    t.equal(minimax_regret_exact(in.cls, in.horizon, {}, env.cfg.budget_seqs), sh,
            env.cfg.tolerance, in.name + " minimax vs log Shtarkov sum");
    require_budget("NML paths", path_count(in.cls.labels(), in.horizon), env.cfg.budget_seqs);
    const auto q = nml_distribution(in.cls, in.horizon);
    const std::vector<int> x(static_cast<std::size_t>(in.horizon), 0);
    const auto paths = all_sequences(in.cls.labels(), in.horizon);
    for (std::size_t c = 0; c < paths.size(); ++c) {
      const double sup = in.cls.sup_log_likelihood(x, paths[c]).value.log();
      t.equal(sup - std::log(q[c]), sh, env.cfg.tolerance, in.name + " NML regret on a path");
    }
  }
  t.holds(n > 0, "no context-free instances generated");
}

void fixed_design_is_max_conditional(const Env& env, Tally& t) {
  for (const auto& in : random_instances(env.cfg.seed + 2, 24)) {
    const auto fixed = fixed_design_value(in.cls, in.horizon, env.cfg.budget_seqs);
    require_budget("context sequences", path_count(in.cls.contexts(), in.horizon),
                   env.cfg.budget_seqs);
    double best = kNegInf;
    for (const auto& x : all_sequences(in.cls.contexts(), in.horizon)) {
      best = std::max(best, shtarkov_conditional(in.cls, x, env.cfg.budget_seqs).log());
    }
    t.equal(fixed.value, best, env.cfg.tolerance, in.name + " fixed-design value");
    // The projected NML equalizes regret on its design.
    const double cond = shtarkov_conditional(in.cls, fixed.contexts, env.cfg.budget_seqs).log();
    const auto q = fixed_design_nml(in.cls, fixed.contexts);
    const auto paths = all_sequences(in.cls.labels(), in.horizon);
    for (std::size_t c = 0; c < paths.size(); ++c) {
      const double sup = in.cls.sup_log_likelihood(fixed.contexts, paths[c]).value.log();
      t.equal(sup - std::log(q[c]), cond, env.cfg.tolerance, in.name + " fixed-design NML regret");
    }
    t.at_most(fixed.value, worst_case_shtarkov(in.cls, in.horizon, {}, {}, env.cfg.budget_seqs).value.log(),
              env.cfg.tolerance, in.name + " fixed design exceeds the tree value");
  }
}

void cnml_within_log_class_size(const Env& env, Tally& t) {
  for (const auto& in : random_instances(env.cfg.seed + 3, 12, false)) {
    CnmlForecaster cnml(in.cls, in.horizon, {}, env.cfg.budget_seqs);
    const double worst = exhaustive_worst_regret(cnml, in.cls, in.horizon, {}, env.cfg.budget_seqs).value;
    t.at_most(worst, std::log(static_cast<double>(in.cls.size())), env.cfg.tolerance,
              in.name + " cnml regret vs log|F|");
  }
  // Distinct full-length point masses meet the bound with equality.
  for (int K = 2; K <= 3; ++K) {
    for (int T = 1; T <= 3; ++T) {
      auto seqs = all_sequences(K, T);
      seqs.resize(std::min<std::size_t>(seqs.size(), static_cast<std::size_t>(T + 1)));
      const auto cls = pointmass_class(K, seqs, 2);
      CnmlForecaster cnml(cls, T, {}, env.cfg.budget_seqs);
      const double worst = exhaustive_worst_regret(cnml, cls, T, {}, env.cfg.budget_seqs).value;
      t.equal(worst, std::log(static_cast<double>(seqs.size())), env.cfg.tolerance,
              "point masses K=" + std::to_string(K) + " T=" + std::to_string(T));
    }
  }
}

const std::vector<double> kAlphaGrid{1e-6, 0.05, 0.1, 0.2, 0.3, 0.5};

// Cover bounds on small random Bernoulli classes.
const std::vector<BoundCase>& bound_cases(const Env& env) {
  if (env.bounds_error) std::rethrow_exception(env.bounds_error);
  if (env.bounds) return *env.bounds;
  try {
    std::vector<BoundCase> cases;
    std::mt19937_64 rng(mix(env.cfg.seed, 77));
    for (int i = 0; i < 8; ++i) {
      const int contexts = 1 + i % 2;
      const int horizon = 1 + (i / 2) % 3;
      const int functions = 2 + i % 3;
      auto cls = random_functions(rng, functions, contexts);
      auto report = entropy_regret_bounds(cls, horizon, kAlphaGrid, env.cfg.budget_trees,
                                          env.cfg.budget_seqs);
      if (!report.exact_regret) {
        throw BudgetExceeded("exact regret for the bound suite", 0, env.cfg.budget_seqs);
      }
      std::ostringstream name;
      name << "functions#" << i << " (X=" << contexts << ", T=" << horizon << ")";
      cases.push_back({name.str(), std::move(cls), horizon, std::move(report)});
    }
    env.bounds = std::move(cases);
  } catch (...) {
    env.bounds_error = std::current_exception();
    throw;
  }
  return *env.bounds;
}

void entropy_bound_dominates(const Env& env, Tally& t) {
  t.equal(cover_bound_constant(), (2.0 - std::log(2.0)) / (std::log(3.0) - std::log(2.0)), kTight,
          "cover bound constant");
  for (const auto& bc : bound_cases(env)) {
    const double exact = *bc.report.exact_regret;
    for (const auto& e : bc.report.entries) {
      t.at_most(exact, e.entropy_bound, env.cfg.tolerance, bc.name + " entropy bound");
      t.at_most(e.entropy_bound, e.global_bound, env.cfg.tolerance, bc.name + " global variant");
    }
  }
}

void lipschitz_bound_dominates(const Env& env, Tally& t) {
  for (const auto& bc : bound_cases(env)) {
    const double exact = *bc.report.exact_regret;
    for (const auto& e : bc.report.entries) {
      t.at_most(exact, e.lipschitz_bound, env.cfg.tolerance, bc.name + " Lipschitz bound");
    }
  }
}

void linear_conditional_sum(const Env& env, Tally& t) {
  for (int T : {1, 2, 4, 8}) {
    const auto r = lin_lower_bound_experiment(T, T, env.cfg.budget_seqs);
    t.equal(r.conditional_shtarkov_log, T * std::log1p(1.0 / std::sqrt(T)), env.cfg.tolerance,
            "orthonormal design T=" + std::to_string(T));
    t.holds(r.chain_holds, "lower-bound chain at T=" + std::to_string(T));
  }
  for (int T = 1; T <= 64; ++T) {
    t.at_most(std::sqrt(T) / 4.0, T * std::log1p(1.0 / std::sqrt(T)), 0.0,
              "square-root bound at T=" + std::to_string(T));
  }
}

void truncation_loss_gap(const Env& env, Tally& t) {
  std::mt19937_64 rng(mix(env.cfg.seed, 5));
  for (int K = 2; K <= 4; ++K) {
    for (int i = 0; i < 2000; ++i) {
      std::vector<double> p(static_cast<std::size_t>(K));
      double total = 0.0;
      for (double& v : p) total += v = -std::log1p(-uniform01(rng));
      for (double& v : p) v /= total;
      if (i % 7 == 0) {
        std::fill(p.begin(), p.end(), 0.0);
        p[static_cast<std::size_t>(uniform_int(rng, K))] = 1.0;
      }
      const double delta = 0.5 * (uniform01(rng) * (1.0 - 2e-9) + 1e-9);
      const int y = uniform_int(rng, K);
      t.at_most(truncation_loss_gap(Distribution(p), y, delta), std::log1p(K * delta), kTight,
                "loss gap K=" + std::to_string(K));
    }
  }
}

void truncation_regret_inequality(const Env& env, Tally& t) {
  for (const auto& in : random_instances(env.cfg.seed + 4, 12, false)) {
    const auto r = truncated_regret_gap_check(in.cls, in.horizon, default_delta_grid(),
                                              env.cfg.budget_seqs);
    t.holds(r.all_hold, in.name + " truncated regret inequality");
    t.holds(r.b2_slack_monotone, in.name + " slack monotone in delta");
    t.holds(r.chain_monotone, in.name + " chain monotone in delta");
  }
}

void truncation_likelihood_gap(const Env& env, Tally& t) {
  for (const auto& in : random_instances(env.cfg.seed + 5, 12, false)) {
    const int K = in.cls.labels();
    const int X = in.cls.contexts();
    require_budget("sequence pairs", saturating_pow(static_cast<std::uint64_t>(K * X), in.horizon),
                   env.cfg.budget_seqs);
    const auto xs = all_sequences(X, in.horizon);
    const auto ys = all_sequences(K, in.horizon);
    for (double delta : {0.01, 0.1, 0.3}) {
      const double bound = delta * static_cast<double>(M_of_T(in.horizon));
      for (const Expert& f : in.cls.experts()) {
        for (const auto& x : xs) {
          for (const auto& y : ys) {
            t.at_most(shlab::truncation_likelihood_gap(f, x, y, delta), bound, kTight,
                      in.name + " likelihood gap");
          }
        }
      }
    }
  }
}

std::vector<Expert> expert_kinds(std::mt19937_64& rng, int K, int X, int T) {
  RandomClassOptions o;
  o.labels = K;
  o.contexts = X;
  o.horizon = T;
  o.experts = 1;
  o.min_probability = 0.0;
  o.point_mass_rate = 0.2;
  std::vector<Expert> out;
  out.push_back(random_explicit_class(o, rng()).experts()[0]);
  o.non_sequential = true;
  out.push_back(random_explicit_class(o, rng()).experts()[0]);
  out.push_back(Expert::constant(Distribution::uniform(K)));
  std::vector<int> seq(static_cast<std::size_t>(T));
  for (int& y : seq) y = uniform_int(rng, K);
  out.push_back(Expert::point_mass(K, seq));
  out.push_back(Expert::truncated(out.front(), 0.1));
  out.push_back(Expert::projected(out.front(), random_tree(rng, X, K, T)));
  if (K == 2) {
    auto design = std::make_shared<const Design>(orthonormal_design(X, X));
    const double s = 1.0 / std::sqrt(static_cast<double>(X));
    out.push_back(Expert::linear(LinearVariant::kLin, std::vector<double>(static_cast<std::size_t>(X), s), design));
    out.push_back(Expert::linear(LinearVariant::kAbsLin, std::vector<double>(static_cast<std::size_t>(X), -s), design));
  }
  return out;
}

void normalization(const Env& env, Tally& t) {
  std::mt19937_64 rng(mix(env.cfg.seed, 6));
  for (int K = 2; K <= 3; ++K) {
    for (int X = 1; X <= 3; ++X) {
      for (int T = 1; T <= 3; ++T) {
        const std::uint64_t trees = tree_count(X, K, T);
        if (trees > 8192) continue;
        require_budget("normalization trees", trees, env.cfg.budget_trees);
        const auto experts = expert_kinds(rng, K, X, T);
        for (std::uint64_t i = 0; i < trees; ++i) {
          const ContextTree tree = tree_from_index(i, X, K, T);
          for (const Expert& f : experts) {
            t.equal(verify_normalization(f, tree).log(), 0.0, kTight, f.kind() + " normalization");
          }
        }
      }
    }
  }
}

void fat_lower_bound(const Env& env, Tally& t) {
  const RealFunctionClass two({{0.0}, {1.0}});
  t.equal(fat_shattering_dim(two, 0.5, 3, false, env.cfg.budget_seqs).dimension, 1.0, 0.0,
          "{0, 1} fat dimension at 0.5");
  const ContextTree t2 = ContextTree::constant(2, std::vector<int>{0, 0});
  t.equal(min_sequential_cover(two, t2, 0.3, env.cfg.budget_seqs).size, 2.0, 0.0,
          "{0, 1} cover at 0.3");
  for (const auto& bc : bound_cases(env)) {
    t.holds(bc.report.fat_checks_hold, bc.name + " fat lower bound");
    for (const auto& e : bc.report.entries) {
      t.at_most(e.fat_lower, e.h_inf, kTight, bc.name + " fat lower bound");
    }
  }
}

void global_cover_relation(const Env& env, Tally& t) {
  for (const auto& bc : bound_cases(env)) {
    for (const auto& e : bc.report.entries) {
      t.at_most(e.h_inf, e.h_global, kTight, bc.name + " tree vs global entropy");
    }
    const GlobalCoverResult g = global_entropy(bc.cls, 0.2, bc.horizon, env.cfg.budget_seqs);
    const std::uint64_t trees = tree_count(bc.cls.contexts(), 2, bc.horizon);
    require_budget("induced-cover trees", trees, env.cfg.budget_trees);
    for (std::uint64_t i = 0; i < trees; ++i) {
      const ContextTree tree = tree_from_index(i, bc.cls.contexts(), 2, bc.horizon);
      const auto induced = induce_tree_cover(g.certificate.maps, tree);
      t.holds(is_sequential_cover(induced, bc.cls, tree, 0.2).covered,
              bc.name + " induced cover fails");
    }
  }
}

void general_matches_contextual(const Env& env, Tally& t) {
  std::mt19937_64 rng(mix(env.cfg.seed, 8));
  for (const auto& in : random_instances(env.cfg.seed + 6, 24, false)) {
    const int K = in.cls.labels();
    const int X = in.cls.contexts();
    const ContextTree tree = random_tree(rng, X, K, in.horizon);
    t.equal(general_shtarkov(induce_subprob(in.cls, tree)).log(),
            shtarkov_contextual(in.cls, tree, env.cfg.budget_seqs).log(), kTight,
            in.name + " general vs contextual");
    if (in.horizon >= 2) {
      std::vector<int> px{uniform_int(rng, X)};
      std::vector<int> py{uniform_int(rng, K)};
      const Prefix prefix(px, py);
      const ContextTree rest = random_tree(rng, X, K, in.horizon - 1);
      t.equal(general_shtarkov(induce_subprob(in.cls, rest, prefix)).log(),
              shtarkov_prefix(in.cls, rest, prefix, in.horizon, env.cfg.budget_seqs).log(), kTight,
              in.name + " general vs prefix");
    }
  }
}

void monte_carlo_within_error(const Env& env, Tally& t) {
  std::mt19937_64 rng(mix(env.cfg.seed, 9));
  int i = 0;
  for (const auto& in : random_instances(env.cfg.seed + 7, 12)) {
    const ContextTree tree = random_tree(rng, in.cls.contexts(), in.cls.labels(), in.horizon);
    const double exact = shtarkov_contextual(in.cls, tree, env.cfg.budget_seqs).linear();
    const std::uint64_t n = 20000;
    require_budget("Monte Carlo samples", n, env.cfg.budget_seqs);
    const McEstimate m = shtarkov_mc_estimate(in.cls, tree, n, mix(env.cfg.seed, 100 + i++));
    t.at_most(std::fabs(m.estimate - exact), 4.0 * m.standard_error, kTight,
              in.name + " estimate vs exact");
  }
}

void cnml_reduces_to_nml(const Env& env, Tally& t) {
  for (const auto& in : random_instances(env.cfg.seed + 8, 24, false)) {
    if (in.cls.contexts() != 1) continue;
    require_budget("NML paths", path_count(in.cls.labels(), in.horizon), env.cfg.budget_seqs);
    const auto q = nml_distribution(in.cls, in.horizon);
    WorstCaseSolver solver(in.cls, in.horizon, {}, env.cfg.budget_seqs);
    const auto paths = all_sequences(in.cls.labels(), in.horizon);
    for (std::size_t c = 0; c < paths.size(); ++c) {
      double p = 1.0;
      std::vector<int> x;
      std::vector<int> y;
      for (int s = 0; s < in.horizon; ++s) {
        x.push_back(0);
        p *= cnml_predict(solver, Prefix(x, y)).probs()[static_cast<std::size_t>(paths[c][static_cast<std::size_t>(s)])];
        y.push_back(paths[c][static_cast<std::size_t>(s)]);
      }
      t.equal(p, q[c], kTight, in.name + " path probability");
    }
  }
}

using EntryFn = std::function<void(const Env&, Tally&)>;

struct EntryDef {
  const char* key;
  EntryFn fn;
};

const std::vector<EntryDef>& entries() {
  static const std::vector<EntryDef> defs{
      {"minimax_regret_equals_worst_case_shtarkov", minimax_equals_worst_case},
      {"cnml_attains_minimax_regret", cnml_attains_minimax},
      {"nml_equalizes_context_free_regret", nml_equalizes_contextfree},
      {"fixed_design_value_is_max_conditional_sum", fixed_design_is_max_conditional},
      {"cnml_regret_within_log_class_size", cnml_within_log_class_size},
      {"entropy_bound_dominates_regret", entropy_bound_dominates},
      {"lipschitz_entropy_bound_dominates_regret", lipschitz_bound_dominates},
      {"linear_class_conditional_sum_lower_bound", linear_conditional_sum},
      {"truncation_loss_gap_bounded", truncation_loss_gap},
      {"truncated_class_regret_inequality", truncation_regret_inequality},
      {"truncation_likelihood_gap_bounded", truncation_likelihood_gap},
      {"likelihood_normalizes_on_every_tree", normalization},
      {"fat_shattering_lower_bounds_entropy", fat_lower_bound},
      {"global_cover_induces_tree_cover", global_cover_relation},
      {"general_shtarkov_matches_contextual", general_matches_contextual},
      {"monte_carlo_estimate_within_error", monte_carlo_within_error},
      {"cnml_reduces_to_nml_without_contexts", cnml_reduces_to_nml},
  };
  return defs;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::kPass:
      return "pass";
    case Status::kFail:
      return "fail";
    case Status::kSkipped:
      return "skipped";
  }
  return "fail";
}

const std::vector<std::string>& suite_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& e : entries()) k.emplace_back(e.key);
    return k;
  }();
  return keys;
}

SuiteReport run_suite(const SuiteConfig& config) {
  SuiteReport report;
  const Env env{config, std::nullopt, nullptr};
  for (const auto& def : entries()) {
    SuiteEntry e;
    e.key = def.key;
    try {
      Tally tally(e);
      def.fn(env, tally);
    } catch (const BudgetExceeded& ex) {
      e.status = Status::kSkipped;
      e.detail = ex.what();
    } catch (const std::exception& ex) {
      e.status = Status::kFail;
      e.detail = std::string("error: ") + ex.what();
    }
    switch (e.status) {
      case Status::kPass:
        ++report.passed;
        break;
      case Status::kFail:
        ++report.failed;
        break;
      case Status::kSkipped:
        ++report.skipped;
        break;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

io::Json to_json(const SuiteReport& report) {
  io::Json matrix = io::Json::array();
  for (const auto& e : report.entries) {
    io::Json j = io::Json::object();
    j["key"] = e.key;
    j["status"] = status_name(e.status);
    j["cases"] = e.cases;
    j["max_error"] = io::number(e.max_error);
    j["detail"] = e.detail;
    matrix.push_back(std::move(j));
  }
  io::Json out = io::Json::object();
  out["matrix"] = std::move(matrix);
  out["passed"] = report.passed;
  out["failed"] = report.failed;
  out["skipped"] = report.skipped;
  return out;
}

}  // namespace shlab::verify

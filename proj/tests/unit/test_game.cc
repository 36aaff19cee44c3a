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
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "shlab/core/errors.h"
#include "shlab/core/families.h"
#include "shlab/core/likelihood.h"
#include "shlab/game/game.h"
#include "shlab/shtarkov/sums.h"
#include "shlab/shtarkov/worst_case.h"

using namespace shlab;

TEST_CASE("primal examples") {
  const auto single =
      HypothesisClass::explicit_finite(2, 2, {Expert::constant(Distribution::bernoulli(0.3))});
  CHECK(std::fabs(minimax_regret_exact(single, 3)) <= 1e-12);
  const auto full = bernoulli_full_class();
  CHECK(minimax_regret_exact(full, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(std::fabs(minimax_regret_exact(full, 2) - std::log(2.5)) <= 1e-9);

  RandomClassOptions o;
  o.contexts = 2;
  o.horizon = 3;
  o.experts = 3;
  const auto cls = random_explicit_class(o, 1234);
  CHECK(std::fabs(minimax_regret_exact(cls, 3) - worst_case_shtarkov(cls, 3).value.log()) <= 1e-9);
}

TEST_CASE("grid oracle examples") {
  const auto single =
      HypothesisClass::explicit_finite(2, 1, {Expert::constant(Distribution::bernoulli(0.3))});
  // The expert's own prediction lies on the lattice, so the grid value is 0.
  CHECK(std::fabs(minimax_regret_grid(single, 2, 0.1)) <= 1e-12);
  const auto full = bernoulli_full_class();
  CHECK(std::fabs(minimax_regret_grid(full, 1, 1e-3) - std::log(2.0)) <= 5e-4);
  const auto pm3 = pointmass_class(3, {{0}, {1}, {2}});
  CHECK(std::fabs(minimax_regret_grid(pm3, 1, 1e-2) - std::log(3.0)) <= 2e-2);
  CHECK_THROWS_AS(minimax_regret_grid(full, 1, 0.3), ValidationError);
  CHECK_THROWS_AS(minimax_regret_grid(full, 1, 0.03), ValidationError);
  CHECK(simplex_lattice_size(3, 100) == 5151u);
}

TEST_CASE("grid sandwich shrinks as h halves") {
  const auto full = bernoulli_full_class();
  for (int T = 1; T <= 2; ++T) {
    const double exact = minimax_regret_exact(full, T);
    double prev = std::numeric_limits<double>::infinity();
    for (double h : {1e-1, 5e-2, 1e-2, 1e-3}) {
      const double g = minimax_regret_grid(full, T, h);
      CHECK(g >= exact - 1e-12);
      CHECK(g - exact <= prev + 1e-15);
      prev = g - exact;
    }
    CHECK(prev <= 1e-3);
  }
}

TEST_CASE("dual examples") {
  const Expert b = Expert::constant(Distribution::bernoulli(0.3));
  const auto single = HypothesisClass::explicit_finite(2, 1, {b});
  const DualGameResult d = dual_game_value(single, 2);
  CHECK(std::fabs(d.value) <= 1e-12);
  const std::vector<double> own{0.49, 0.21, 0.21, 0.09};
  for (std::size_t i = 0; i < own.size(); ++i) CHECK(d.distribution[i] == doctest::Approx(own[i]));

  const auto pm = pointmass_class(2, {{0, 1}, {1, 1}});
  const DualGameResult p = dual_game_value(pm, 2);
  CHECK(p.value == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(p.distribution == std::vector<double>{0.0, 0.5, 0.0, 0.5});

  const DualGameResult f = dual_game_value(bernoulli_full_class(), 2);
  CHECK(std::fabs(f.value - std::log(2.5)) <= 1e-12);
  const std::vector<double> nml{0.4, 0.1, 0.1, 0.4};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::fabs(f.distribution[i] - nml[i]) <= 1e-12);
  CHECK(std::fabs(f.entropy + f.expected_score - f.value) <= 1e-12);
}

TEST_CASE("three-way equality on strictly positive classes") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomClassOptions o;
    o.labels = 2 + static_cast<int>(seed % 2);
    o.contexts = 1 + static_cast<int>((seed / 2) % 2);
    o.horizon = 1 + static_cast<int>(seed % 3);
    o.experts = 1 + static_cast<int>(seed % 5);
    const auto cls = random_explicit_class(o, 1000 + seed);
    CAPTURE(seed);
    const GameValueReport r = solve_game(cls, o.horizon);
    CHECK(r.max_abs_gap <= 1e-9);
    const DualGameResult d = dual_game_value(cls, o.horizon);
    CHECK(std::fabs(d.entropy + d.expected_score - d.value) <= 1e-10);
    CHECK(std::fabs(shtarkov_contextual(cls, d.tree).log() - d.value) <= 1e-10);
  }
}

TEST_CASE("dual never exceeds primal, including zero-probability experts") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomClassOptions o;
    o.labels = 2 + static_cast<int>(seed % 2);
    o.contexts = 2;
    o.horizon = 2 + static_cast<int>(seed % 2);
    o.experts = 2 + static_cast<int>(seed % 3);
    o.point_mass_rate = 0.5;
    o.min_probability = 0.0;
    const auto cls = random_explicit_class(o, 500 + seed);
    CAPTURE(seed);
    const double primal = minimax_regret_exact(cls, o.horizon);
    CHECK(dual_game_value(cls, o.horizon).value <= primal + 1e-12);
    CHECK(std::fabs(primal - worst_case_shtarkov(cls, o.horizon).value.log()) <= 1e-9);
  }
}

TEST_CASE("degenerate branch: all continuations dead gives -inf") {
  // Point mass on (0): every path the learner could face after y1 = 1 is dead.
  const auto pm = pointmass_class(2, {{0, 0}});
  CHECK(std::fabs(minimax_regret_exact(pm, 2)) <= 1e-15);
  const auto dead = HypothesisClass::explicit_finite(
      2, 1, {Expert::table(2, 1, 1, {1.0, 0.0})});
  CHECK(std::fabs(minimax_regret_exact(dead, 1)) <= 1e-15);
}

TEST_CASE("fixed design equals the maximal conditional sum") {
  RandomClassOptions o;
  o.contexts = 3;
  o.horizon = 2;
  o.experts = 3;
  o.non_sequential = true;
  const auto cls = random_explicit_class(o, 99);
  const FixedDesignResult r = fixed_design_value(cls, 2);
  double best = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      best = std::max(best, shlab::testing::naive_prefix_sum(
                                cls, ContextTree::constant(2, std::vector<int>{a, b})));
    }
  }
  CHECK(std::fabs(r.value - std::log(best)) <= 1e-12);
  CHECK(r.value <= minimax_regret_exact(cls, 2) + 1e-12);
  CHECK_THROWS_AS(fixed_design_value(cls, 2, 5), BudgetExceeded);
}

TEST_CASE("constraints apply to all three routes") {
  RandomClassOptions o;
  o.contexts = 2;
  o.horizon = 2;
  o.experts = 3;
  const auto cls = random_explicit_class(o, 314);
  ContextConstraint c(std::vector<std::vector<int>>{{1}, {0}});
  const GameValueReport r = solve_game(cls, 2, std::nullopt, c);
  CHECK(r.max_abs_gap <= 1e-9);
  CHECK(std::fabs(r.primal_value - shtarkov_conditional(cls, std::vector<int>{1, 0}).log()) <= 1e-9);
}

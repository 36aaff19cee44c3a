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
#include "shlab/cnml/forecaster.h"
#include "shlab/cnml/play.h"
#include "shlab/core/errors.h"
#include "shlab/core/families.h"
#include "shlab/core/likelihood.h"
#include "shlab/game/game.h"
#include "shlab/shtarkov/sums.h"

using namespace shlab;

TEST_CASE("cNML prediction examples") {
  const auto full = bernoulli_full_class();
  const Distribution r1 = cnml_predict(full, 2, Prefix({0}, {}));
  CHECK(r1[0] == doctest::Approx(0.5).epsilon(1e-15));
  const Distribution r2 = cnml_predict(full, 2, Prefix({0, 0}, {1}));
  CHECK(r2[1] == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(r2[0] == doctest::Approx(0.2).epsilon(1e-14));

  const auto pm = pointmass_class(2, {{0, 0, 0}, {0, 1, 1}});
  const Distribution dead = cnml_predict(pm, 3, Prefix({0, 0}, {1}));
  CHECK(dead == Distribution::uniform(2));
  CHECK(dead.strictly_positive());
}

TEST_CASE("NML examples") {
  const Expert b = Expert::constant(Distribution::bernoulli(0.3));
  const auto single = HypothesisClass::explicit_finite(2, 1, {b});
  const auto p = nml_distribution(single, 2);
  const std::vector<double> own{0.49, 0.21, 0.21, 0.09};
  for (std::size_t i = 0; i < 4; ++i) CHECK(p[i] == doctest::Approx(own[i]).epsilon(1e-14));
  const auto f = nml_distribution(bernoulli_full_class(), 2);
  const std::vector<double> nml{0.4, 0.1, 0.1, 0.4};
  for (std::size_t i = 0; i < 4; ++i) CHECK(f[i] == doctest::Approx(nml[i]).epsilon(1e-14));
  const auto pm = nml_distribution(pointmass_class(2, {{0, 1}, {1, 1}}), 2);
  CHECK(pm == std::vector<double>{0.0, 0.5, 0.0, 0.5});
  // Point-mass on a sequence of length 1 followed by uniform: sum is positive.
  const auto zero = HypothesisClass::explicit_finite(2, 1, {Expert::table(2, 1, 1, {1.0, 0.0})});
  CHECK_NOTHROW(nml_distribution(zero, 1));
}

TEST_CASE("NML of a zero-sum class is a typed error") {
  // Every expert class has a sum >= 1; only an oracle can report zero mass.
  const auto nothing = HypothesisClass::oracle(2, 1, "empty", [](auto, auto) {
    return SupResult{LogValue::zero(), std::nullopt, {}};
  });
  CHECK_THROWS_AS(nml_distribution(nothing, 2), ValidationError);
}

TEST_CASE("fixed-design NML examples") {
  std::vector<Distribution> e1{Distribution::bernoulli(0.2), Distribution::bernoulli(0.7)};
  std::vector<Distribution> e2{Distribution::bernoulli(0.6), Distribution::bernoulli(0.1)};
  const auto cls = HypothesisClass::explicit_finite(
      2, 2, {Expert::non_sequential(e1), Expert::non_sequential(e2)});
  const std::vector<int> c{1, 1};
  const auto restricted = HypothesisClass::explicit_finite(
      2, 1, {Expert::constant(e1[1]), Expert::constant(e2[1])});
  const auto a = fixed_design_nml(cls, c);
  const auto b = nml_distribution(restricted, 2);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::fabs(a[i] - b[i]) <= 1e-15);

  // Two-point design x = (0, 1), by hand.
  const std::vector<int> d{0, 1};
  const std::vector<double> sups{std::max(0.8 * 0.3, 0.4 * 0.9), std::max(0.8 * 0.7, 0.4 * 0.1),
                                 std::max(0.2 * 0.3, 0.6 * 0.9), std::max(0.2 * 0.7, 0.6 * 0.1)};
  const double z = sups[0] + sups[1] + sups[2] + sups[3];
  const auto n = fixed_design_nml(cls, d);
  for (std::size_t i = 0; i < 4; ++i) CHECK(n[i] == doctest::Approx(sups[i] / z).epsilon(1e-14));
}

TEST_CASE("play examples") {
  const Expert b = Expert::constant(Distribution::bernoulli(0.3));
  const auto single = HypothesisClass::explicit_finite(2, 1, {b});
  ExpertForecaster copy(b);
  WorstCaseAdversary wc(single, 4);
  const Transcript t0 = play_game(copy, wc, single, 4);
  CHECK(std::fabs(t0.regret) <= 1e-12);

  const auto full = bernoulli_full_class();
  CnmlForecaster cnml(full, 2);
  for (const auto& y : shlab::testing::all_paths(2, 2)) {
    SequenceAdversary adv({0, 0}, y);
    const Transcript t = play_game(cnml, adv, full, 2);
    CHECK(t.regret <= std::log(2.5) + 1e-9);
    CHECK(std::fabs(t.regret - std::log(2.5)) <= 1e-12);
  }

  const std::vector<int> seq{1, 0, 0, 1, 1};
  const auto pm = pointmass_class(2, {seq});
  UniformForecaster uni(2);
  SequenceAdversary adv(std::vector<int>(5, 0), seq);
  const Transcript tu = play_game(uni, adv, pm, 5);
  CHECK(tu.regret == doctest::Approx(5 * std::log(2.0)).epsilon(1e-15));
  CHECK(tu.losses.size() == 5u);

  SequenceAdversary bad({3}, {0});
  CHECK_THROWS_AS(play_game(uni, bad, pm, 1), ValidationError);
}

TEST_CASE("transcript tallies agree") {
  RandomClassOptions o;
  o.labels = 3;
  o.contexts = 2;
  o.horizon = 3;
  o.experts = 4;
  o.point_mass_rate = 0.2;
  const auto cls = random_explicit_class(o, 21);
  BayesMixtureForecaster bayes(cls);
  WorstCaseAdversary adv(cls, 3);
  const Transcript t = play_game(bayes, adv, cls, 3);
  if (std::isfinite(t.regret)) {
    CHECK(std::fabs(t.regret - t.regret_incremental) <= 1e-10);
  } else {
    CHECK(t.regret == t.regret_incremental);
  }
}

TEST_CASE("cNML is minimax optimal and dominates baselines") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    RandomClassOptions o;
    o.labels = 2 + static_cast<int>(seed % 2);
    o.contexts = 1 + static_cast<int>((seed / 2) % 2);
    o.horizon = o.labels == 3 ? 2 : 3;
    o.experts = 2 + static_cast<int>(seed % 3);
    const auto cls = random_explicit_class(o, 40 + seed);
    CAPTURE(seed);
    const double exact = minimax_regret_exact(cls, o.horizon);
    CnmlForecaster cnml(cls, o.horizon);
    const auto best = exhaustive_worst_regret(cnml, cls, o.horizon);
    CHECK(std::fabs(best.value - exact) <= 1e-9);
    CHECK(best.value <= std::log(static_cast<double>(cls.size())) + 1e-9);
    UniformForecaster uni(o.labels);
    BayesMixtureForecaster bayes(cls);
    TruncatedForecaster tb(std::make_unique<BayesMixtureForecaster>(cls), 0.05);
    for (Forecaster* f : std::initializer_list<Forecaster*>{&uni, &bayes, &tb}) {
      CHECK(exhaustive_worst_regret(*f, cls, o.horizon).value >= best.value - 1e-9);
    }
  }
}

TEST_CASE("cNML reduces to NML without contexts") {
  RandomClassOptions o;
  o.horizon = 3;
  o.experts = 3;
  o.point_mass_rate = 0.3;
  const auto cls = random_explicit_class(o, 3);
  const auto nml = nml_distribution(cls, 3);
  CnmlForecaster cnml(cls, 3);
  for (const auto& y : shlab::testing::all_paths(2, 3)) {
    const std::vector<int> x(3, 0);
    if (cls.sup_log_likelihood(x, y).value.is_zero()) continue;
    SequenceAdversary adv(x, y);
    const Transcript t = play_game(cnml, adv, cls, 3);
    double prod = 1.0;
    for (std::size_t r = 0; r < 3; ++r) prod *= t.predictions[r][y[r]];
    CHECK(std::fabs(prod - nml[path_code(y, 2)]) <= 1e-12);
    for (const Distribution& p : t.predictions) {
      double s = 0;
      for (double v : p.probs()) s += v;
      CHECK(std::fabs(s - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("point-mass classes meet the finite-class bound") {
  const auto pm = pointmass_class(2, {{0, 0, 1}, {1, 1, 0}, {0, 1, 1}});
  CnmlForecaster cnml(pm, 3);
  const auto r = exhaustive_worst_regret(cnml, pm, 3);
  CHECK(std::fabs(r.value - std::log(3.0)) <= 1e-9);
  ExpertForecaster copy(Expert::constant(Distribution::bernoulli(0.3)));
  const auto single =
      HypothesisClass::explicit_finite(2, 1, {Expert::constant(Distribution::bernoulli(0.3))});
  CHECK(std::fabs(exhaustive_worst_regret(copy, single, 3).value) <= 1e-12);
  CHECK_THROWS_AS(exhaustive_worst_regret(copy, single, 3, {}, 4), BudgetExceeded);
}

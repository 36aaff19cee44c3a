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
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "shlab/core/errors.h"
#include "shlab/core/families.h"
#include "shlab/core/likelihood.h"
#include "shlab/truncation/truncation.h"

using namespace shlab;

TEST_CASE("truncate_dist examples") {
  const Distribution u = Distribution::uniform(3);
  const Distribution tu = truncate_dist(u, 0.2);
  for (int y = 0; y < 3; ++y) CHECK(tu[y] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const Distribution a = truncate_dist(Distribution({1.0, 0.0}), 0.1);
  CHECK(a[0] == doctest::Approx(11.0 / 12.0).epsilon(1e-15));
  CHECK(a[1] == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  const Distribution b = truncate_dist(Distribution({1.0, 0.0, 0.0}), 0.2);
  CHECK(b[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(b[1] == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(b[2] == doctest::Approx(0.125).epsilon(1e-15));
  CHECK_THROWS_AS(truncate_dist(u, 0.0), ValidationError);
  CHECK_THROWS_AS(truncate_dist(u, 0.5), ValidationError);
}

TEST_CASE("truncate_class acts pointwise") {
  RandomClassOptions o;
  o.labels = 3;
  o.contexts = 2;
  o.horizon = 2;
  o.experts = 3;
  o.point_mass_rate = 0.3;
  const auto cls = random_explicit_class(o, 8);
  const auto tr = truncate_class(cls, 0.05);
  for (std::size_t i = 0; i < cls.size(); ++i) {
    for (int x1 = 0; x1 < 2; ++x1) {
      const std::vector<int> c{x1};
      const HistoryView h{c, {}};
      CHECK(tr.experts()[i].prediction(h) == truncate_dist(cls.experts()[i].prediction(h), 0.05));
    }
  }
  CHECK_THROWS_AS(truncate_class(bernoulli_full_class(), 0.1), ValidationError);
}

TEST_CASE("truncation loss gap examples") {
  CHECK(truncation_loss_gap(Distribution({1.0, 0.0}), 1, 0.1) == kNegInf);
  CHECK(std::fabs(truncation_loss_gap(Distribution::uniform(2), 0, 0.1)) <= 1e-15);
  const double g = truncation_loss_gap(Distribution({0.9, 0.1}), 1, 0.1);
  CHECK(g == doctest::Approx(std::log(0.6)).epsilon(1e-14));
  CHECK(g <= std::log(1.2));
}

TEST_CASE("truncation likelihood gap examples") {
  CHECK(M_of_T(3) == 7u);
  CHECK(M_of_T(0) == 0u);
  CHECK_THROWS_AS(M_of_T(62), ValidationError);
  const Expert pm = Expert::point_mass(2, {1, 0});
  const std::vector<int> x{0, 0};
  const std::vector<int> y{1, 0};
  const double gap = truncation_likelihood_gap(pm, x, y, 0.1);
  CHECK(gap == doctest::Approx((1.1 / 1.2) * (1.1 / 1.2) - 1.0).epsilon(1e-14));
  CHECK(gap <= 0.1 * 3);
  CHECK(std::fabs(truncation_likelihood_gap(Expert::constant(Distribution::uniform(2)), x, y, 0.1)) <=
        1e-15);
}

TEST_CASE("image box and inverse round trip") {
  std::mt19937_64 rng(4);
  for (int K = 2; K <= 4; ++K) {
    for (double delta : {0.01, 0.1, 0.3}) {
      const double lo = delta / (1 + K * delta);
      const double hi = (1 + delta) / (1 + K * delta);
      int accepted = 0;
      while (accepted < 200) {
        // Uniform point of the simplex by normalized exponentials.
        std::vector<double> q(static_cast<std::size_t>(K));
        double z = 0;
        for (double& v : q) {
          v = -std::log(1.0 - uniform01(rng));
          z += v;
        }
        for (double& v : q) v /= z;
        bool inside = true;
        for (double v : q) inside = inside && v >= lo;
        if (!inside) {
          CHECK_FALSE(untruncate_dist(Distribution(q), delta).has_value());
          continue;
        }
        ++accepted;
        const auto p = untruncate_dist(Distribution(q), delta);
        REQUIRE(p.has_value());
        const Distribution back = truncate_dist(*p, delta);
        for (int y = 0; y < K; ++y) {
          CHECK(std::fabs(back[y] - q[static_cast<std::size_t>(y)]) <= 1e-12);
          CHECK(back[y] >= lo - 1e-15);
          CHECK(back[y] <= hi + 1e-15);
        }
      }
    }
  }
}

TEST_CASE("truncated regret check examples") {
  const auto single =
      HypothesisClass::explicit_finite(2, 1, {Expert::constant(Distribution::bernoulli(0.3))});
  const auto rs = truncated_regret_gap_check(single, 2, default_delta_grid());
  CHECK(rs.all_hold);
  for (const auto& e : rs.entries) {
    CHECK(std::fabs(e.regret) <= 1e-12);
    CHECK(std::fabs(e.truncated_regret) <= 1e-12);
  }

  const auto zero_one = HypothesisClass::explicit_finite(
      2, 1, {Expert::constant(Distribution::bernoulli(0.0)), Expert::constant(Distribution::bernoulli(1.0))});
  const auto r01 = truncated_regret_gap_check(zero_one, 2, {0.1, 0.01, 0.001});
  CHECK(r01.all_hold);
  CHECK(r01.b2_slack_monotone);
  CHECK(r01.chain_monotone);
  CHECK(r01.entries.back().b2_slack < r01.entries.front().b2_slack);
  CHECK(std::fabs(r01.entries.back().truncated_regret - r01.entries.back().regret) < 1e-2);

  const auto grid = bernoulli_grid_class(101);
  const auto rg = truncated_regret_gap_check(grid, 2, {0.01});
  CHECK(rg.all_hold);
  CHECK(rg.entries[0].b2_slack >= 0.0);
}

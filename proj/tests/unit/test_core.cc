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
#include <memory>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "shlab/core/context_tree.h"
#include "shlab/core/errors.h"
#include "shlab/core/expert.h"
#include "shlab/core/families.h"
#include "shlab/core/history.h"
#include "shlab/core/hypothesis_class.h"
#include "shlab/core/likelihood.h"

using namespace shlab;
using shlab::testing::all_paths;
using shlab::testing::naive_likelihood;

namespace {

std::vector<Expert> sample_experts(int labels, int contexts, int horizon) {
  std::vector<Expert> out;
  out.push_back(Expert::constant(Distribution::uniform(labels)));
  std::vector<double> p(static_cast<std::size_t>(labels), 0.0);
  p[0] = 0.6;
  for (int k = 1; k < labels; ++k) p[static_cast<std::size_t>(k)] = 0.4 / (labels - 1);
  out.push_back(Expert::constant(Distribution(p)));
  std::vector<Distribution> per;
  for (int x = 0; x < contexts; ++x) per.push_back(Distribution::point_mass(labels, x % labels));
  out.push_back(Expert::non_sequential(per));
  std::vector<int> seq;
  for (int t = 0; t < horizon; ++t) seq.push_back((t * 2 + 1) % labels);
  out.push_back(Expert::point_mass(labels, seq));
  RandomClassOptions o;
  o.labels = labels;
  o.contexts = contexts;
  o.horizon = horizon;
  o.experts = 1;
  o.point_mass_rate = 0.3;
  out.push_back(random_explicit_class(o, 42).experts()[0]);
  out.push_back(Expert::truncated(out.back(), 0.05));
  return out;
}

}  // namespace

TEST_CASE("likelihood examples") {
  const Expert uniform = Expert::constant(Distribution::uniform(2));
  const std::vector<int> x{0, 0, 0};
  const std::vector<int> y{1, 0, 1};
  CHECK(likelihood(uniform, x, y).log() == doctest::Approx(std::log(1.0 / 8.0)).epsilon(1e-15));
  CHECK(likelihood(uniform, {}, {}).log() == 0.0);

  const Expert b = Expert::constant(Distribution::bernoulli(0.25));
  const std::vector<int> x2{0, 0};
  const std::vector<int> y2{1, 0};
  const double expected = std::log(naive_likelihood(b, x2, y2));
  CHECK(likelihood(b, x2, y2).log() == doctest::Approx(std::log(0.1875)).epsilon(1e-15));
  CHECK(likelihood(b, x2, y2).log() == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("likelihood errors and zero factors") {
  const Expert b = Expert::constant(Distribution::bernoulli(1.0));
  CHECK(likelihood(b, std::vector<int>{0, 0}, std::vector<int>{1, 0}).is_zero());
  CHECK_THROWS_AS(likelihood(b, std::vector<int>{0}, std::vector<int>{1, 0}), ValidationError);
  CHECK_THROWS_AS(likelihood(b, std::vector<int>{0}, std::vector<int>{2}), ValidationError);
}

TEST_CASE("class sup examples") {
  const auto pm = pointmass_class(2, {{0, 1, 1}});
  CHECK(class_sup_likelihood(pm, std::vector<int>{0, 0, 0}, std::vector<int>{0, 1, 1}).value.log() ==
        0.0);

  const auto full = bernoulli_full_class();
  const std::vector<int> x{0, 0};
  const std::vector<int> y{1, 0};
  const SupResult r = class_sup_likelihood(full, x, y);
  CHECK(r.value.log() == doctest::Approx(std::log(0.25)).epsilon(1e-15));
  REQUIRE(r.parameter.size() == 2);
  CHECK(r.parameter[1] == 0.5);
  const SupResult g = bernoulli_refined_grid_sup(y);
  CHECK(std::fabs(g.value.log() - r.value.log()) <= 1e-6);

  const auto two = HypothesisClass::explicit_finite(
      2, 1,
      {Expert::constant(Distribution::bernoulli(0.3)),
       Expert::constant(Distribution::bernoulli(0.6))});
  const SupResult s = class_sup_likelihood(two, x, std::vector<int>{1, 1});
  CHECK(s.value.log() == doctest::Approx(std::log(0.36)).epsilon(1e-14));
  CHECK(s.expert == 1u);
}

TEST_CASE("full Bernoulli oracle agrees with grid refinement on all short sequences") {
  const auto full = bernoulli_full_class();
  for (int T = 1; T <= 8; ++T) {
    for (const auto& y : all_paths(2, T)) {
      const std::vector<int> x(y.size(), 0);
      const double closed = full.sup_log_likelihood(x, y).value.log();
      const double grid = bernoulli_refined_grid_sup(y).value.log();
      CHECK(std::fabs(closed - grid) <= 1e-6);
      CHECK(grid <= closed + 1e-12);
    }
  }
}

TEST_CASE("sup ties break to the lowest index") {
  const auto cls = HypothesisClass::explicit_finite(
      2, 1,
      {Expert::constant(Distribution::uniform(2)), Expert::constant(Distribution::uniform(2))});
  CHECK(cls.sup_log_likelihood(std::vector<int>{0}, std::vector<int>{1}).expert == 0u);
}

TEST_CASE("explicit table validation names the history") {
  // labels 2, contexts 1, horizon 2: histories (x1), (x1,y1=0,x2), (x1,y1=1,x2).
  std::vector<double> probs{0.5, 0.5, 0.5, 0.49, 0.3, 0.7};
  try {
    Expert::table(2, 1, 2, probs);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("contexts [0,0] labels [0]") != std::string::npos);
  }
}

TEST_CASE("history indexer round-trips") {
  const HistoryIndexer idx(3, 2, 3);
  CHECK(idx.size() == 2u + 12u + 72u);
  std::vector<int> c;
  std::vector<int> l;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    idx.decode(i, c, l);
    CHECK(idx.index(HistoryView{c, l}) == i);
  }
}

TEST_CASE("context tree shapes") {
  CHECK(ContextTree::node_count(2, 3) == 7u);
  CHECK(ContextTree::node_count(3, 3) == 13u);
  CHECK(ContextTree::node_count(1, 4) == 4u);
  const std::vector<int> seq{1, 0, 2};
  const ContextTree t = ContextTree::constant(2, seq);
  for (const auto& p : all_paths(2, 3)) CHECK(t.contexts_along(p) == seq);
  CHECK_THROWS_AS(ContextTree(2, 2, {0, 0}), ValidationError);
}

TEST_CASE("projection examples") {
  std::vector<Distribution> per{Distribution::bernoulli(0.2), Distribution::bernoulli(0.7)};
  const Expert f = Expert::non_sequential(per);
  const std::vector<int> c1{1, 1, 1};
  const Expert g = project_expert(f, ContextTree::constant(2, c1));
  for (const auto& p : all_paths(2, 2)) {
    const std::vector<int> dummy(3, 0);
    CHECK(g.probability(HistoryView{dummy, p}, 1) == 0.7);
  }

  // |X| = 1: projection is the identity on behavior.
  RandomClassOptions o;
  o.horizon = 3;
  o.experts = 1;
  const Expert r = random_explicit_class(o, 7).experts()[0];
  const Expert rp = project_expert(r, ContextTree::constant(2, std::vector<int>{0, 0, 0}));
  for (int d = 0; d <= 2; ++d) {
    for (const auto& p : all_paths(2, d)) {
      const std::vector<int> ctx(static_cast<std::size_t>(d) + 1, 0);
      CHECK(r.prediction(HistoryView{ctx, p}) == rp.prediction(HistoryView{ctx, p}));
    }
  }

  // Linear expert on a three-point design, tree x1 = e1, x2(0) = e2, x2(1) = e3.
  auto design = std::make_shared<const Design>(Design{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const Expert lin = Expert::linear(LinearVariant::kLin, {0.5, -0.3, 0.6}, design);
  const Expert lp = project_expert(lin, ContextTree(2, 2, {0, 1, 2}));
  const std::vector<int> dummy1{0};
  const std::vector<int> dummy2{0, 0};
  CHECK(lp.probability(HistoryView{dummy1, {}}, 1) == doctest::Approx((0.5 + 1) / 2));
  const std::vector<int> y0{0};
  const std::vector<int> y1{1};
  CHECK(lp.probability(HistoryView{dummy2, y0}, 1) == doctest::Approx((-0.3 + 1) / 2));
  CHECK(lp.probability(HistoryView{dummy2, y1}, 1) == doctest::Approx((0.6 + 1) / 2));
}

TEST_CASE("normalization examples") {
  const ContextTree t3 = ContextTree(2, 3, {0, 0, 0, 0, 0, 0, 0});
  CHECK(std::fabs(verify_normalization(Expert::constant(Distribution::uniform(2)), t3).log()) <=
        1e-12);
  CHECK(std::fabs(verify_normalization(Expert::constant(Distribution::bernoulli(0.3)),
                                       ContextTree::constant(2, std::vector<int>{0, 0}))
                      .log()) <= 1e-12);
  CHECK(verify_normalization(Expert::point_mass(2, {1, 0, 1}), t3).log() == 0.0);
}

TEST_CASE("likelihood chain rule, projection consistency, sup dominance") {
  for (int K = 2; K <= 3; ++K) {
    for (int X = 1; X <= 2; ++X) {
      const int T = 3;
      const auto experts = sample_experts(K, X, T);
      const auto cls = HypothesisClass::explicit_finite(K, X, experts);
      // Alternating tree for the projection check.
      std::vector<int> nodes(ContextTree::node_count(K, T));
      for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = static_cast<int>(i % X);
      const ContextTree tree(K, T, nodes);
      for (const Expert& f : experts) {
        const Expert g = project_expert(f, tree);
        for (const auto& y : all_paths(K, T)) {
          const auto x = tree.contexts_along(y);
          for (std::size_t d = 1; d <= y.size(); ++d) {
            std::span<const int> xs(x.data(), d);
            std::span<const int> ys(y.data(), d);
            const double full = likelihood(f, xs, ys).log();
            const double head = likelihood(f, xs.first(d - 1), ys.first(d - 1)).log();
            const double p = f.probability(HistoryView{xs, ys.first(d - 1)}, ys[d - 1]);
            const double rhs = p > 0 ? log_mul(head, std::log(p)) : kNegInf;
            if (rhs == kNegInf) {
              CHECK(full == kNegInf);
            } else {
              CHECK(full == doctest::Approx(rhs).epsilon(1e-14));
            }
          }
          const std::vector<int> zeros(y.size(), 0);
          CHECK(likelihood(f, x, y) == likelihood(g, zeros, y));
          CHECK(cls.sup_log_likelihood(x, y).value >= likelihood(f, x, y));
        }
      }
    }
  }
}

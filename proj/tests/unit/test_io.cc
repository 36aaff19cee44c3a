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
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "shlab/core/errors.h"
#include "shlab/core/likelihood.h"
#include "shlab/io/class_spec.h"
#include "shlab/io/report.h"
#include "shlab/linlab/linlab.h"
#include "shlab/shtarkov/sums.h"

using namespace shlab;
using io::Json;

namespace {

std::string error_of(const std::string& text) {
  try {
    io::parse_class_spec_text(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("bernoulli_full spec gives the full oracle class") {
  const auto spec =
      io::parse_class_spec_text(R"({"labels":2,"contexts":1,"class":{"kind":"bernoulli_full"}})");
  CHECK(spec.labels == 2);
  CHECK(spec.contexts == 1);
  CHECK_FALSE(spec.cls.is_explicit());
  const std::vector<int> x{0, 0};
  const std::vector<int> y{1, 0};
  CHECK(spec.cls.sup_log_likelihood(x, y).value.log() == doctest::Approx(std::log(0.25)).epsilon(1e-15));

  const auto cat =
      io::parse_class_spec_text(R"({"labels":3,"contexts":2,"class":{"kind":"bernoulli_full"}})");
  const std::vector<int> x3{0, 1, 0};
  const std::vector<int> y3{2, 2, 0};
  CHECK(cat.cls.sup_log_likelihood(x3, y3).value.log() ==
        doctest::Approx(2 * std::log(2.0 / 3) + std::log(1.0 / 3)).epsilon(1e-14));
}

TEST_CASE("pointmass spec gives a deterministic two-expert class") {
  const auto spec = io::parse_class_spec_text(
      R"({"labels":2,"contexts":1,"class":{"kind":"pointmass","sequences":[[0,1],[1,1]]}})");
  REQUIRE(spec.cls.is_explicit());
  CHECK(spec.cls.size() == 2);
  const std::vector<int> x{0, 0};
  const std::vector<int> s0{0, 1};
  const std::vector<int> s1{1, 1};
  const std::vector<int> other{1, 0};
  CHECK(likelihood(spec.cls.experts()[0], x, s0).log() == 0.0);
  CHECK(likelihood(spec.cls.experts()[0], x, s1).is_zero());
  CHECK(likelihood(spec.cls.experts()[1], x, s1).log() == 0.0);
  CHECK(spec.cls.sup_log_likelihood(x, other).value.is_zero());
  // Exactly two paths carry mass one.
  CHECK(shtarkov_contextfree(spec.cls, 2).log() == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("explicit spec with a bad row names the history") {
  const std::string text = R"({"labels":2,"contexts":1,"class":{"kind":"explicit","experts":[
      {"type":"table","horizon":1,"rows":[[0.5,0.5]]},
      {"type":"table","horizon":2,"rows":[[0.5,0.5],[0.5,0.5],[0.49,0.5]]}]}})";
  const std::string msg = error_of(text);
  CHECK(contains(msg, "class.experts[1].rows"));
  CHECK(contains(msg, "history contexts [0,0] labels [1]"));
  CHECK(contains(msg, "sum to 0.99"));

  const std::string good = R"({"labels":2,"contexts":1,"class":{"kind":"explicit","experts":[
      {"type":"table","horizon":2,"rows":[[0.5,0.5],[0.25,0.75],[1,0]]},
      {"type":"nonsequential","rows":[[0.3,0.7]]},
      {"type":"constant","probs":[0.9,0.1]}]}})";
  const auto spec = io::parse_class_spec_text(good);
  CHECK(spec.cls.size() == 3);
  const std::vector<int> x{0, 0};
  const std::vector<int> y{0, 1};
  CHECK(likelihood(spec.cls.experts()[0], x, y).log() == doctest::Approx(std::log(0.5 * 0.75)));
}

TEST_CASE("schema errors carry field paths") {
  CHECK(contains(error_of(R"({"labels":2,"contexts":1,"class":{"kind":"nope"}})"),
                 "class.kind: unknown class kind 'nope'"));
  CHECK(contains(error_of(R"({"labels":2,"class":{"kind":"bernoulli_full"}})"),
                 "missing required field 'contexts'"));
  CHECK(contains(error_of(R"({"labels":0,"contexts":1,"class":{"kind":"bernoulli_full"}})"),
                 "labels: value 0 outside"));
  CHECK(contains(error_of(R"({"labels":2,"contexts":1,"extra":1,"class":{"kind":"bernoulli_full"}})"),
                 "unknown field 'extra'"));
  CHECK(contains(error_of(R"({"labels":2,"contexts":1,"class":{"kind":"bernoulli_grid","points":"x"}})"),
                 "class.points: expected an integer"));
  CHECK(contains(error_of(R"({"labels":3,"contexts":1,"class":{"kind":"bernoulli_grid","points":3}})"),
                 "labels: bernoulli_grid needs exactly 2 labels"));
  CHECK(contains(error_of(R"({"labels":2,"contexts":1,"class":{"kind":"pointmass","sequences":[[0,2]]}})"),
                 "class.sequences[0][1]: value 2 outside [0, 1]"));
  CHECK(contains(error_of(R"({"labels":2,"contexts":2,"class":{"kind":"explicit","experts":[
      {"type":"nonsequential","rows":[[0.5,0.5]]}]}})"),
                 "class.experts[0].rows: expected one row per context"));
  CHECK(contains(error_of(R"({"labels":2,"contexts":1,"class":{"kind":"explicit","experts":[
      {"type":"constant","probs":[0.5,0.5,0]}]}})"),
                 "class.experts[0].probs: expected 2 probabilities, got 3"));
  CHECK(contains(error_of(R"({"labels":2,"contexts":1,"class":{"kind":"explicit","experts":[
      {"type":"lookup"}]}})"),
                 "class.experts[0].type: unknown expert type"));
  CHECK(contains(error_of(R"({"labels":2,"contexts":1,"class":{"kind":"explicit","experts":[]}})"),
                 "class.experts: explicit class needs at least one expert"));
  CHECK(contains(error_of(R"({"labels":2)"), "class spec: "));
  CHECK(contains(error_of(R"([1,2])"), "document: expected an object"));
}

TEST_CASE("linear specs") {
  const auto lin = io::parse_class_spec_text(
      R"({"labels":2,"contexts":4,"class":{"kind":"linear","design":"orthonormal","dim":4}})");
  REQUIRE(lin.design);
  CHECK(is_orthonormal(*lin.design));
  CHECK_FALSE(lin.cls.is_explicit());
  const std::vector<int> x{0, 1, 2, 3};
  const std::vector<int> y{1, 0, 0, 1};
  CHECK(lin.cls.sup_log_likelihood(x, y).value.log() ==
        doctest::Approx(4 * std::log((1 + 0.5) / 2)).epsilon(1e-12));

  const auto grid = io::parse_class_spec_text(
      R"({"labels":2,"contexts":2,"class":{"kind":"abs_linear","design":[[1,0],[0,1]],"grid_steps":4}})");
  CHECK(grid.cls.is_explicit());
  CHECK(grid.cls.size() == weight_grid(2, 4).size());

  CHECK(contains(error_of(R"({"labels":2,"contexts":2,"class":{"kind":"linear","design":[[1,0]]}})"),
                 "class.design: expected one point per context"));
  CHECK(contains(error_of(R"({"labels":2,"contexts":1,"class":{"kind":"linear","design":[[2]]}})"),
                 "class.design[0]: design point outside the unit ball"));
  CHECK(contains(error_of(R"({"labels":2,"contexts":2,"class":{"kind":"linear","design":[[1,0],[0.6,0.8]]}})"),
                 "class.design:"));
}

TEST_CASE("tree, prefix, constraint and sub-probability documents") {
  const ContextTree t = io::parse_tree(Json::parse("[0,1,0]"), 2, 2);
  CHECK(t.depth() == 2);
  CHECK(t.context_at(std::vector<int>{}) == 0);
  CHECK(t.context_at(std::vector<int>{0}) == 1);
  CHECK(io::tree_to_json(t).dump() == "[0,1,0]");
  const ContextTree t3 = io::parse_tree(Json::parse("[0,1,0,1]"), 3, 2);
  CHECK(t3.depth() == 2);
  CHECK(io::parse_tree(Json::parse(R"({"depth":0,"nodes":[]})"), 2, 2).depth() == 0);
  CHECK(io::parse_tree(Json::parse("[]"), 2, 2).depth() == 0);
  CHECK_THROWS_AS(io::parse_tree(Json::parse("[0,1]"), 2, 2), ValidationError);
  CHECK_THROWS_AS(io::parse_tree(Json::parse("[0,2,0]"), 2, 2), ValidationError);

  const Prefix p = io::parse_prefix(Json::parse(R"({"contexts":[1,0],"labels":[1]})"), 2, 2);
  CHECK(p.contexts() == std::vector<int>{1, 0});
  CHECK_FALSE(p.complete());
  CHECK(io::prefix_to_json(p).dump() == R"({"contexts":[1,0],"labels":[1]})");
  CHECK_THROWS_AS(io::parse_prefix(Json::parse(R"({"contexts":[1],"labels":[1,0]})"), 2, 2),
                  ValidationError);

  const auto cdoc = Json::parse(
      R"({"per_round":[[0],[0,1]],"overrides":[{"contexts":[0],"labels":[1],"allowed":[1]}]})");
  const ContextConstraint c = io::parse_constraint(cdoc, 2);
  CHECK(c.allowed(std::vector<int>{}, std::vector<int>{}, 2) == 1u);
  CHECK(c.allowed(std::vector<int>{0}, std::vector<int>{0}, 2) == 3u);
  CHECK(c.allowed(std::vector<int>{0}, std::vector<int>{1}, 2) == 2u);
  CHECK(io::constraint_to_json(c) == cdoc);
  CHECK_THROWS_AS(io::parse_constraint(Json::parse(R"({"per_round":[[]]})"), 2), ValidationError);

  const SubProbClass sp = io::parse_subprob(Json::parse(R"({"ground_size":2,"measures":[[0.5,0.25],[0,1]]})"));
  CHECK(sp.measures().size() == 2);
  CHECK_THROWS_AS(io::parse_subprob(Json::parse(R"({"ground_size":2,"measures":[[0.9,0.2]]})")),
                  ValidationError);
}

TEST_CASE("non-finite numbers are written as strings") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(io::number(inf) == "inf");
  CHECK(io::number(-inf) == "-inf");
  CHECK(io::number(std::nan("")) == "nan");
  CHECK(io::number(0.25) == 0.25);
  CHECK(io::number_from_json(io::number(-inf)) == -inf);
  CHECK(io::number_from_json(Json(0.5)) == 0.5);
  CHECK(std::isnan(io::number_from_json(Json("nan"))));
  CHECK_THROWS_AS(io::number_from_json(Json("x")), ValidationError);
  CHECK(io::log_value_json(LogValue::zero())["value_log"] == "-inf");
  CHECK(io::log_value_json(LogValue::zero())["value_linear"] == 0.0);
}

TEST_CASE("serialized reports round-trip byte for byte") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::uniform_int_distribution<int> e(-300, 300);
  for (int trial = 0; trial < 200; ++trial) {
    Json doc = Json::object();
    doc["command"] = "test";
    Json vals = Json::array();
    for (int i = 0; i < 20; ++i) vals.push_back(io::number(std::ldexp(u(rng), e(rng))));
    vals.push_back(io::number(-std::numeric_limits<double>::infinity()));
    vals.push_back(io::number(0.1 + 0.2));
    vals.push_back(io::number(-0.0));
    doc["values"] = std::move(vals);
    doc["nested"] = {{"b", 1}, {"a", {1, 2, 3}}, {"flag", true}, {"none", nullptr}};
    doc["version"] = io::version_string();
    const std::string once = io::serialize(doc);
    const std::string twice = io::serialize(io::parse_json_text(once, "report"));
    REQUIRE(once == twice);
    // Values themselves survive, not only their text.
    const Json back = io::parse_json_text(once, "report");
    for (std::size_t i = 0; i < doc["values"].size(); ++i) {
      const double a = io::number_from_json(doc["values"][i]);
      const double b = io::number_from_json(back["values"][i]);
      CHECK((a == b && std::signbit(a) == std::signbit(b)));
    }
  }
}

TEST_CASE("table rendering") {
  Json r = Json::object();
  r["command"] = "x";
  r["result"] = {{"value_log", 0.5}, {"tree", {0, 1, 0}}, {"nested", {{"k", "v"}}}};
  const std::string t = io::render_table(r);
  CHECK(contains(t, "value_log  0.5"));
  CHECK(contains(t, "tree       0 1 0"));
  CHECK(contains(t, "nested.k   v"));
}

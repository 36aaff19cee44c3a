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

#include "shlab/io/class_spec.h"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "shlab/core/errors.h"
#include "shlab/core/families.h"
#include "shlab/linlab/linlab.h"

namespace shlab::io {

namespace {

// A JSON node together with its path from the document root, so that every
// schema error can say where it happened.
class Field {
 public:
  Field(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const Json& json() const { return *j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError((path_.empty() ? std::string("document") : path_) + ": " + msg);
  }

  bool has(const char* key) const { return j_->is_object() && j_->contains(key); }

  Field at(const char* key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) fail(std::string("missing required field '") + key + "'");
    return Field(*it, path_.empty() ? key : path_ + "." + key);
  }

  Field operator[](std::size_t i) const {
    return Field((*j_)[i], path_ + "[" + std::to_string(i) + "]");
  }

  std::size_t array_size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  void only_keys(std::initializer_list<const char*> keys) const {
    if (!j_->is_object()) fail("expected an object");
    for (auto it = j_->begin(); it != j_->end(); ++it) {
      bool known = false;
      for (const char* k : keys) known = known || it.key() == k;
      if (!known) fail("unknown field '" + it.key() + "'");
    }
  }

  int integer(int lo, int hi = std::numeric_limits<int>::max()) const {
    if (!j_->is_number_integer()) fail("expected an integer");
    const auto v = j_->get<std::int64_t>();
    if (v < lo || v > hi) {
      std::ostringstream os;
      os << "value " << v << " outside [" << lo << ", " << hi << "]";
      fail(os.str());
    }
    return static_cast<int>(v);
  }

  double real() const {
    if (!j_->is_number()) fail("expected a number");
    return j_->get<double>();
  }

  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  std::vector<int> int_list(int lo, int hi) const {
    std::vector<int> out(array_size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i].integer(lo, hi);
    return out;
  }

  std::vector<double> real_list() const {
    std::vector<double> out(array_size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i].real();
    return out;
  }

 private:
  const Json* j_;
  std::string path_;
};

// Rethrows a library validation error with the field's path in front.
template <typename Fn>
auto at_field(const Field& f, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    f.fail(e.what());
  }
}

Distribution parse_distribution(const Field& f, int labels) {
  std::vector<double> p = f.real_list();
  if (static_cast<int>(p.size()) != labels) {
    f.fail("expected " + std::to_string(labels) + " probabilities, got " +
           std::to_string(p.size()));
  }
  return at_field(f, [&] { return Distribution(std::move(p)); });
}

Expert parse_expert(const Field& f, int labels, int contexts) {
  const std::string type = f.at("type").string();
  if (type == "table") {
    f.only_keys({"type", "horizon", "rows"});
    const int horizon = f.at("horizon").integer(1, 30);
    const Field rows = f.at("rows");
    std::vector<double> flat;
    const std::size_t n = rows.array_size();
    flat.reserve(n * static_cast<std::size_t>(labels));
    for (std::size_t i = 0; i < n; ++i) {
      const Field row = rows[i];
      if (row.array_size() != static_cast<std::size_t>(labels)) {
        row.fail("expected " + std::to_string(labels) + " probabilities, got " +
                 std::to_string(row.array_size()));
      }
      for (std::size_t k = 0; k < row.array_size(); ++k) flat.push_back(row[k].real());
    }
    return at_field(rows, [&] { return Expert::table(labels, contexts, horizon, std::move(flat)); });
  }
  if (type == "nonsequential") {
    f.only_keys({"type", "rows"});
    const Field rows = f.at("rows");
    if (rows.array_size() != static_cast<std::size_t>(contexts)) {
      rows.fail("expected one row per context (" + std::to_string(contexts) + "), got " +
                std::to_string(rows.array_size()));
    }
    std::vector<Distribution> per;
    for (std::size_t x = 0; x < rows.array_size(); ++x) {
      per.push_back(parse_distribution(rows[x], labels));
    }
    return Expert::non_sequential(std::move(per));
  }
  if (type == "constant") {
    f.only_keys({"type", "probs"});
    return Expert::constant(parse_distribution(f.at("probs"), labels));
  }
  f.at("type").fail("unknown expert type '" + type + "'");
}

std::shared_ptr<const Design> parse_design(const Field& cls, int contexts) {
  const Field d = cls.at("design");
  if (d.json().is_string()) {
    if (d.string() != "orthonormal") d.fail("expected \"orthonormal\" or a list of points");
    const int dim = cls.at("dim").integer(1, 1 << 20);
    return at_field(cls.at("dim"), [&] {
      return std::make_shared<const Design>(orthonormal_design(contexts, dim));
    });
  }
  if (cls.has("dim")) cls.at("dim").fail("only used with \"design\": \"orthonormal\"");
  if (d.array_size() != static_cast<std::size_t>(contexts)) {
    d.fail("expected one point per context (" + std::to_string(contexts) + "), got " +
           std::to_string(d.array_size()));
  }
  Design points;
  for (std::size_t i = 0; i < d.array_size(); ++i) {
    points.push_back(d[i].real_list());
    if (points.back().size() != points.front().size()) d[i].fail("dimension differs from point 0");
    if (points.back().empty()) d[i].fail("empty design point");
    double n2 = 0.0;
    for (double v : points.back()) n2 += v * v;
    if (n2 > (1.0 + 1e-12) * (1.0 + 1e-12)) d[i].fail("design point outside the unit ball");
  }
  return std::make_shared<const Design>(std::move(points));
}

}  // namespace

ClassSpec parse_class_spec(const Json& document) {
  const Field root(document, "");
  root.only_keys({"labels", "contexts", "class"});
  const int labels = root.at("labels").integer(1, 1 << 16);
  const int contexts = root.at("contexts").integer(1, 1 << 16);
  const Field c = root.at("class");
  const Field kind_field = c.at("kind");
  const std::string kind = kind_field.string();

  if (kind == "explicit") {
    c.only_keys({"kind", "experts"});
    const Field experts = c.at("experts");
    if (experts.array_size() == 0) experts.fail("explicit class needs at least one expert");
    std::vector<Expert> list;
    for (std::size_t i = 0; i < experts.array_size(); ++i) {
      list.push_back(parse_expert(experts[i], labels, contexts));
    }
    return {labels, contexts, kind,
            HypothesisClass::explicit_finite(labels, contexts, std::move(list)), nullptr};
  }
  if (kind == "bernoulli_full") {
    c.only_keys({"kind"});
    if (labels < 2) root.at("labels").fail("full family needs at least 2 labels");
    return {labels, contexts, kind, bernoulli_full_class(labels, contexts), nullptr};
  }
  if (kind == "bernoulli_grid") {
    c.only_keys({"kind", "points"});
    if (labels != 2) root.at("labels").fail("bernoulli_grid needs exactly 2 labels");
    const int points = c.at("points").integer(2, 1 << 20);
    return {labels, contexts, kind, bernoulli_grid_class(points, contexts), nullptr};
  }
  if (kind == "linear" || kind == "abs_linear") {
    c.only_keys({"kind", "design", "dim", "grid_steps"});
    if (labels != 2) root.at("labels").fail(kind + " needs exactly 2 labels");
    const auto variant = kind == "linear" ? LinearVariant::kLin : LinearVariant::kAbsLin;
    auto design = parse_design(c, contexts);
    if (c.has("grid_steps")) {
      const int steps = c.at("grid_steps").integer(1, 64);
      return {labels, contexts, kind, linear_grid_class(design, variant, steps), design};
    }
    return {labels, contexts, kind,
            at_field(c.at("design"), [&] { return linear_class(design, variant); }), design};
  }
  if (kind == "pointmass") {
    c.only_keys({"kind", "sequences"});
    const Field seqs = c.at("sequences");
    if (seqs.array_size() == 0) seqs.fail("pointmass class needs at least one sequence");
    std::vector<std::vector<int>> list;
    for (std::size_t i = 0; i < seqs.array_size(); ++i) {
      list.push_back(seqs[i].int_list(0, labels - 1));
    }
    return {labels, contexts, kind, pointmass_class(labels, list, contexts), nullptr};
  }
  kind_field.fail("unknown class kind '" + kind + "'");
}

ClassSpec parse_class_spec_text(std::string_view text) {
  return parse_class_spec(parse_json_text(text, "class spec"));
}

ClassSpec load_class_spec(const std::string& path) {
  return parse_class_spec(read_json_file(path));
}

Json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string(source) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

ContextTree parse_tree(const Json& document, int labels, int contexts) {
  const Field root(document, "");
  Field nodes = root;
  int depth = -1;
  if (document.is_object()) {
    root.only_keys({"depth", "nodes"});
    depth = root.at("depth").integer(0, 40);
    nodes = root.at("nodes");
  }
  const std::vector<int> values = nodes.int_list(0, contexts - 1);
  if (depth < 0) {
    for (int d = 0; d <= 40; ++d) {
      const std::size_t n = ContextTree::node_count(labels, d);
      if (n == values.size()) {
        depth = d;
        break;
      }
      if (n > values.size() || (labels == 1 && d > static_cast<int>(values.size()))) break;
    }
    if (depth < 0) {
      nodes.fail(std::to_string(values.size()) + " nodes is not a complete " +
                 std::to_string(labels) + "-ary tree size");
    }
  }
  return at_field(nodes, [&] { return ContextTree(labels, depth, values); });
}

Json tree_to_json(const ContextTree& tree) {
  Json j = Json::array();
  for (int x : tree.nodes()) j.push_back(x);
  return j;
}

Prefix parse_prefix(const Json& document, int labels, int contexts) {
  const Field root(document, "");
  root.only_keys({"contexts", "labels"});
  auto x = root.at("contexts").int_list(0, contexts - 1);
  auto y = root.at("labels").int_list(0, labels - 1);
  return at_field(root, [&] { return Prefix(std::move(x), std::move(y)); });
}

Json prefix_to_json(const Prefix& prefix) {
  Json j = Json::object();
  j["contexts"] = prefix.contexts();
  j["labels"] = prefix.labels();
  return j;
}

ContextConstraint parse_constraint(const Json& document, int contexts) {
  const Field root(document, "");
  root.only_keys({"per_round", "overrides"});
  std::vector<std::vector<int>> per_round;
  if (root.has("per_round")) {
    const Field pr = root.at("per_round");
    for (std::size_t t = 0; t < pr.array_size(); ++t) {
      per_round.push_back(pr[t].int_list(0, contexts - 1));
      if (per_round.back().empty()) pr[t].fail("empty admissible set");
    }
  }
  ContextConstraint out = at_field(root, [&] { return ContextConstraint(std::move(per_round)); });
  if (root.has("overrides")) {
    const Field ov = root.at("overrides");
    for (std::size_t i = 0; i < ov.array_size(); ++i) {
      const Field o = ov[i];
      o.only_keys({"contexts", "labels", "allowed"});
      auto x = o.at("contexts").int_list(0, contexts - 1);
      auto y = o.at("labels").int_list(0, std::numeric_limits<int>::max());
      auto allowed = o.at("allowed").int_list(0, contexts - 1);
      if (allowed.empty()) o.at("allowed").fail("empty admissible set");
      at_field(o, [&] { out.add_override(std::move(x), std::move(y), std::move(allowed)); });
    }
  }
  return out;
}

Json constraint_to_json(const ContextConstraint& constraint) {
  Json j = Json::object();
  j["per_round"] = constraint.per_round();
  Json ov = Json::array();
  for (const auto& o : constraint.overrides()) {
    Json e = Json::object();
    e["contexts"] = o.contexts;
    e["labels"] = o.labels;
    e["allowed"] = o.allowed;
    ov.push_back(std::move(e));
  }
  j["overrides"] = std::move(ov);
  return j;
}

SubProbClass parse_subprob(const Json& document) {
  const Field root(document, "");
  root.only_keys({"ground_size", "measures"});
  const int n = root.at("ground_size").integer(1, 1 << 24);
  const Field m = root.at("measures");
  std::vector<std::vector<double>> measures;
  for (std::size_t i = 0; i < m.array_size(); ++i) measures.push_back(m[i].real_list());
  return at_field(m, [&] { return SubProbClass(static_cast<std::size_t>(n), std::move(measures)); });
}

}  // namespace shlab::io

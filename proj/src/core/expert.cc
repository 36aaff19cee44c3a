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

#include "shlab/core/expert.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <variant>

#include "shlab/core/errors.h"

namespace shlab {

namespace {

struct TableRule {
  HistoryIndexer indexer;
  std::vector<double> probs;
};

struct NonSequentialRule {
  std::vector<Distribution> per_context;
};

struct ConstantRule {
  Distribution prediction;
};

struct PointMassRule {
  std::vector<int> sequence;
};

struct LinearRule {
  LinearVariant variant;
  std::vector<double> w;
  std::shared_ptr<const Design> design;
};

struct TruncatedRule {
  Expert base;
  double delta;
};

struct ProjectedRule {
  Expert base;
  ContextTree tree;
};

std::string describe_history(HistoryView h) {
  std::ostringstream os;
  os << "contexts [";
  for (std::size_t i = 0; i < h.contexts.size(); ++i) os << (i ? "," : "") << h.contexts[i];
  os << "] labels [";
  for (std::size_t i = 0; i < h.labels.size(); ++i) os << (i ? "," : "") << h.labels[i];
  os << "]";
  return os.str();
}

}  // namespace

struct Expert::Rule {
  std::variant<TableRule, NonSequentialRule, ConstantRule, PointMassRule, LinearRule,
               TruncatedRule, ProjectedRule>
      body;
};

Expert Expert::table(int labels, int contexts, int horizon, std::vector<double> probs) {
  HistoryIndexer indexer(labels, contexts, horizon);
  if (probs.size() != indexer.size() * static_cast<std::size_t>(labels)) {
    std::ostringstream os;
    os << "expert table needs " << indexer.size() * static_cast<std::size_t>(labels)
       << " probabilities, got " << probs.size();
    throw ValidationError(os.str());
  }
  std::vector<int> ctx;
  std::vector<int> lab;
  for (std::size_t i = 0; i < indexer.size(); ++i) {
    std::span<const double> row(probs.data() + i * static_cast<std::size_t>(labels),
                                static_cast<std::size_t>(labels));
    if (auto err = check_distribution(row)) {
      indexer.decode(i, ctx, lab);
      throw ValidationError("invalid prediction at history " +
                            describe_history({ctx, lab}) + ": " + *err);
    }
  }
  auto rule = std::make_shared<Rule>(Rule{TableRule{indexer, std::move(probs)}});
  return Expert(std::move(rule), labels);
}

Expert Expert::non_sequential(std::vector<Distribution> per_context) {
  if (per_context.empty()) throw ValidationError("non-sequential expert needs >= 1 context");
  const int labels = per_context.front().size();
  for (const auto& d : per_context) {
    if (d.size() != labels) throw ValidationError("non-sequential expert label sizes disagree");
  }
  auto rule = std::make_shared<Rule>(Rule{NonSequentialRule{std::move(per_context)}});
  return Expert(std::move(rule), labels);
}

Expert Expert::constant(Distribution prediction) {
  const int labels = prediction.size();
  auto rule = std::make_shared<Rule>(Rule{ConstantRule{std::move(prediction)}});
  return Expert(std::move(rule), labels);
}

Expert Expert::point_mass(int labels, std::vector<int> sequence) {
  if (labels < 1) throw ValidationError("label alphabet must be nonempty");
  for (int y : sequence) {
    if (y < 0 || y >= labels) throw ValidationError("point-mass sequence label out of alphabet");
  }
  auto rule = std::make_shared<Rule>(Rule{PointMassRule{std::move(sequence)}});
  return Expert(std::move(rule), labels);
}

double linear_rule_value(LinearVariant variant, std::span<const double> w,
                         std::span<const double> x) {
  if (w.size() != x.size()) throw ValidationError("linear rule dimension mismatch");
  double dot = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) dot += w[i] * x[i];
  const double v = variant == LinearVariant::kLin ? (dot + 1.0) / 2.0 : std::fabs(dot);
  return std::clamp(v, 0.0, 1.0);
}

Expert Expert::linear(LinearVariant variant, std::vector<double> w,
                      std::shared_ptr<const Design> design) {
  if (!design || design->empty()) throw ValidationError("linear expert needs a nonempty design");
  double norm2 = 0.0;
  for (double v : w) norm2 += v * v;
  if (norm2 > (1.0 + 1e-12) * (1.0 + 1e-12)) throw ValidationError("linear weight outside the unit ball");
  for (const auto& x : *design) {
    if (x.size() != w.size()) throw ValidationError("design point dimension differs from weight");
    double xn = 0.0;
    for (double v : x) xn += v * v;
    if (xn > (1.0 + 1e-12) * (1.0 + 1e-12)) throw ValidationError("design point outside the unit ball");
  }
  auto rule = std::make_shared<Rule>(Rule{LinearRule{variant, std::move(w), std::move(design)}});
  return Expert(std::move(rule), 2);
}

Expert Expert::truncated(Expert base, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw ValidationError("truncation level outside (0, 1/2)");
  const int labels = base.labels();
  auto rule = std::make_shared<Rule>(Rule{TruncatedRule{std::move(base), delta}});
  return Expert(std::move(rule), labels);
}

Expert Expert::projected(Expert base, ContextTree tree) {
  if (tree.labels() != base.labels()) throw ValidationError("tree arity differs from label count");
  if (auto c = base.contexts(); c && tree.max_context() >= *c) {
    throw ValidationError("tree uses a context outside the expert's alphabet");
  }
  if (auto r = base.max_round(); r && tree.depth() > *r) {
    throw ValidationError("tree deeper than the expert's table");
  }
  const int labels = base.labels();
  auto rule = std::make_shared<Rule>(Rule{ProjectedRule{std::move(base), std::move(tree)}});
  return Expert(std::move(rule), labels);
}

std::optional<int> Expert::contexts() const {
  return std::visit(
      [](const auto& r) -> std::optional<int> {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, TableRule>) {
          return r.indexer.contexts();
        } else if constexpr (std::is_same_v<R, NonSequentialRule>) {
          return static_cast<int>(r.per_context.size());
        } else if constexpr (std::is_same_v<R, LinearRule>) {
          return static_cast<int>(r.design->size());
        } else if constexpr (std::is_same_v<R, TruncatedRule>) {
          return r.base.contexts();
        } else {
          return std::nullopt;
        }
      },
      rule_->body);
}

std::optional<int> Expert::max_round() const {
  return std::visit(
      [](const auto& r) -> std::optional<int> {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, TableRule>) {
          return r.indexer.horizon();
        } else if constexpr (std::is_same_v<R, TruncatedRule>) {
          return r.base.max_round();
        } else if constexpr (std::is_same_v<R, ProjectedRule>) {
          return r.tree.depth();
        } else {
          return std::nullopt;
        }
      },
      rule_->body);
}

bool Expert::is_non_sequential() const {
  return std::visit(
      [](const auto& r) -> bool {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, NonSequentialRule> || std::is_same_v<R, ConstantRule> ||
                      std::is_same_v<R, LinearRule>) {
          return true;
        } else if constexpr (std::is_same_v<R, TruncatedRule>) {
          return r.base.is_non_sequential();
        } else {
          return false;
        }
      },
      rule_->body);
}

std::string Expert::kind() const {
  return std::visit(
      [](const auto& r) -> std::string {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, TableRule>) return "table";
        if constexpr (std::is_same_v<R, NonSequentialRule>) return "nonsequential";
        if constexpr (std::is_same_v<R, ConstantRule>) return "constant";
        if constexpr (std::is_same_v<R, PointMassRule>) return "pointmass";
        if constexpr (std::is_same_v<R, LinearRule>) {
          return r.variant == LinearVariant::kLin ? "linear" : "abs_linear";
        }
        if constexpr (std::is_same_v<R, TruncatedRule>) return "truncated(" + r.base.kind() + ")";
        if constexpr (std::is_same_v<R, ProjectedRule>) return "projected(" + r.base.kind() + ")";
      },
      rule_->body);
}

void Expert::predict(HistoryView history, std::span<double> out) const {
  if (out.size() != static_cast<std::size_t>(labels_)) {
    throw ValidationError("prediction buffer has the wrong size");
  }
  if (history.contexts.empty() || history.labels.size() + 1 != history.contexts.size()) {
    throw ValidationError("expert queried with a malformed history");
  }
  const int x = history.contexts.back();
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, TableRule>) {
          const std::size_t row = r.indexer.index(history) * static_cast<std::size_t>(labels_);
          std::copy_n(r.probs.begin() + static_cast<std::ptrdiff_t>(row), labels_, out.begin());
        } else if constexpr (std::is_same_v<R, NonSequentialRule>) {
          if (x < 0 || x >= static_cast<int>(r.per_context.size())) {
            throw ValidationError("context out of the expert's alphabet");
          }
          const auto p = r.per_context[static_cast<std::size_t>(x)].probs();
          std::copy(p.begin(), p.end(), out.begin());
        } else if constexpr (std::is_same_v<R, ConstantRule>) {
          const auto p = r.prediction.probs();
          std::copy(p.begin(), p.end(), out.begin());
        } else if constexpr (std::is_same_v<R, PointMassRule>) {
          const std::size_t t = history.round();
          if (t <= r.sequence.size()) {
            std::fill(out.begin(), out.end(), 0.0);
            out[static_cast<std::size_t>(r.sequence[t - 1])] = 1.0;
          } else {
            std::fill(out.begin(), out.end(), 1.0 / labels_);
          }
        } else if constexpr (std::is_same_v<R, LinearRule>) {
          if (x < 0 || x >= static_cast<int>(r.design->size())) {
            throw ValidationError("context out of the design");
          }
          const double p1 = linear_rule_value(r.variant, r.w, (*r.design)[static_cast<std::size_t>(x)]);
          out[0] = 1.0 - p1;
          out[1] = p1;
        } else if constexpr (std::is_same_v<R, TruncatedRule>) {
          r.base.predict(history, out);
          const double denom = 1.0 + labels_ * r.delta;
          for (double& p : out) p = (p + r.delta) / denom;
        } else if constexpr (std::is_same_v<R, ProjectedRule>) {
          std::vector<int> path(history.labels.begin(), history.labels.end());
          path.push_back(0);
          const std::vector<int> ctx = r.tree.contexts_along(path);
          r.base.predict(HistoryView{ctx, history.labels}, out);
        }
      },
      rule_->body);
}

double Expert::probability(HistoryView history, int label) const {
  if (label < 0 || label >= labels_) throw ValidationError("label out of alphabet");
  std::vector<double> buf(static_cast<std::size_t>(labels_));
  predict(history, buf);
  return buf[static_cast<std::size_t>(label)];
}

Distribution Expert::prediction(HistoryView history) const {
  std::vector<double> buf(static_cast<std::size_t>(labels_));
  predict(history, buf);
  return Distribution(std::move(buf));
}

Distribution Expert::prediction_at(int context) const {
  if (!is_non_sequential()) throw ValidationError("prediction_at needs a non-sequential expert");
  const int ctx[1] = {context};
  return prediction(HistoryView{std::span<const int>(ctx, 1), {}});
}

}  // namespace shlab

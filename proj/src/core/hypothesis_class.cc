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

#include "shlab/core/hypothesis_class.h"

#include <sstream>

#include "shlab/core/errors.h"
#include "shlab/core/likelihood.h"
#include "shlab/kernels/kernels.h"

namespace shlab {

HypothesisClass HypothesisClass::explicit_finite(int labels, int contexts,
                                                 std::vector<Expert> experts, std::string name) {
  if (labels < 1 || contexts < 1) throw ValidationError("alphabets must be nonempty");
  if (experts.empty()) throw ValidationError("explicit class needs at least one expert");
  for (std::size_t i = 0; i < experts.size(); ++i) {
    const Expert& e = experts[i];
    if (e.labels() != labels) {
      std::ostringstream os;
      os << "expert " << i << " predicts over " << e.labels() << " labels, class has " << labels;
      throw ValidationError(os.str());
    }
    if (auto c = e.contexts(); c && *c < contexts) {
      std::ostringstream os;
      os << "expert " << i << " is defined on " << *c << " contexts, class has " << contexts;
      throw ValidationError(os.str());
    }
  }
  HypothesisClass cls;
  cls.labels_ = labels;
  cls.contexts_ = contexts;
  cls.name_ = std::move(name);
  cls.experts_ = std::move(experts);
  return cls;
}

HypothesisClass HypothesisClass::oracle(int labels, int contexts, std::string name,
                                        SupOracle oracle) {
  if (labels < 1 || contexts < 1) throw ValidationError("alphabets must be nonempty");
  if (!oracle) throw ValidationError("oracle class needs a callable");
  HypothesisClass cls;
  cls.labels_ = labels;
  cls.contexts_ = contexts;
  cls.name_ = std::move(name);
  cls.oracle_ = std::move(oracle);
  return cls;
}

std::span<const Expert> HypothesisClass::experts() const {
  if (oracle_) throw ValidationError("class '" + name_ + "' is an oracle class without experts");
  return experts_;
}

SupResult HypothesisClass::sup_log_likelihood(std::span<const int> contexts,
                                              std::span<const int> labels) const {
  validate_sequences(labels_, contexts_, contexts, labels);
  if (oracle_) {
    SupResult r = oracle_(contexts, labels);
    if (r.value.log() > 0.0) r.value = LogValue::one();
    return r;
  }
  SupResult best;
  for (std::size_t i = 0; i < experts_.size(); ++i) {
    const LogValue v = likelihood(experts_[i], contexts, labels);
    if (!best.expert || v > best.value) {
      best.value = v;
      best.expert = i;
    }
  }
  return best;
}

HypothesisClass HypothesisClass::map_experts(const std::function<Expert(const Expert&)>& fn,
                                             std::string name) const {
  std::vector<Expert> mapped;
  mapped.reserve(experts().size());
  for (const Expert& e : experts()) mapped.push_back(fn(e));
  return explicit_finite(labels_, contexts_, std::move(mapped), std::move(name));
}

HypothesisClass HypothesisClass::with_expert(Expert extra) const {
  std::vector<Expert> all(experts().begin(), experts().end());
  all.push_back(std::move(extra));
  return explicit_finite(labels_, contexts_, std::move(all), name_);
}

// ---------------------------------------------------------------------------

void validate_sequences(int labels, int contexts, std::span<const int> context_seq,
                        std::span<const int> label_seq) {
  if (context_seq.size() != label_seq.size()) {
    std::ostringstream os;
    os << "context sequence has length " << context_seq.size() << " but label sequence has "
       << label_seq.size();
    throw ValidationError(os.str());
  }
  for (std::size_t t = 0; t < context_seq.size(); ++t) {
    if (contexts >= 0 && (context_seq[t] < 0 || context_seq[t] >= contexts)) {
      std::ostringstream os;
      os << "context " << context_seq[t] << " at round " << t + 1 << " outside alphabet of size "
         << contexts;
      throw ValidationError(os.str());
    }
    if (label_seq[t] < 0 || label_seq[t] >= labels) {
      std::ostringstream os;
      os << "label " << label_seq[t] << " at round " << t + 1 << " outside alphabet of size "
         << labels;
      throw ValidationError(os.str());
    }
  }
}

LogValue likelihood(const Expert& f, std::span<const int> contexts, std::span<const int> labels) {
  validate_sequences(f.labels(), f.contexts().value_or(-1), contexts, labels);
  std::vector<double> buf(static_cast<std::size_t>(f.labels()));
  double total = 0.0;
  for (std::size_t t = 0; t < contexts.size(); ++t) {
    f.predict(HistoryView{contexts.first(t + 1), labels.first(t)}, buf);
    const double p = buf[static_cast<std::size_t>(labels[t])];
    if (!(p > 0.0)) return LogValue::zero();
    total += std::log(p);
  }
  return LogValue::from_log(total);
}

SupResult class_sup_likelihood(const HypothesisClass& cls, std::span<const int> contexts,
                               std::span<const int> labels) {
  return cls.sup_log_likelihood(contexts, labels);
}

Expert project_expert(const Expert& f, const ContextTree& tree) {
  return Expert::projected(f, tree);
}

namespace {

void normalization_dfs(const Expert& f, const ContextTree& tree, std::vector<int>& ctx,
                       std::vector<int>& lab, double log_mass, std::vector<double>& leaves) {
  const std::size_t t = lab.size();
  if (t == static_cast<std::size_t>(tree.depth())) {
    leaves.push_back(log_mass);
    return;
  }
  ctx.push_back(tree.context_at(lab));
  std::vector<double> p(static_cast<std::size_t>(f.labels()));
  f.predict(HistoryView{ctx, lab}, p);
  for (int y = 0; y < f.labels(); ++y) {
    const double py = p[static_cast<std::size_t>(y)];
    lab.push_back(y);
    normalization_dfs(f, tree, ctx, lab, py > 0.0 ? log_mul(log_mass, std::log(py)) : kNegInf,
                      leaves);
    lab.pop_back();
  }
  ctx.pop_back();
}

}  // namespace

LogValue verify_normalization(const Expert& f, const ContextTree& tree) {
  if (tree.labels() != f.labels()) throw ValidationError("tree arity differs from label count");
  std::vector<int> ctx;
  std::vector<int> lab;
  std::vector<double> leaves;
  leaves.reserve(path_count(f.labels(), tree.depth()));
  normalization_dfs(f, tree, ctx, lab, 0.0, leaves);
  return LogValue::from_log(kernels::log_sum_exp(leaves));
}

}  // namespace shlab

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


#include "shlab/cnml/forecaster.h"

#include <cmath>

#include "shlab/core/likelihood.h"
#include "shlab/kernels/kernels.h"
#include "shlab/shtarkov/sums.h"
#include "shlab/truncation/truncation.h"

namespace shlab {

void Forecaster::reset() {
  contexts_.clear();
  labels_.clear();
  on_reset();
}

Distribution Forecaster::predict(int context) {
  if (contexts_.size() != labels_.size()) throw Error("predict called twice in one round");
  contexts_.push_back(context);
  return predict_impl();
}

void Forecaster::observe(int label) {
  if (contexts_.size() != labels_.size() + 1) throw Error("observe called before predict");
  labels_.push_back(label);
}

namespace {

Distribution normalize_scores(std::span<const double> s) {
  const double m = kernels::max_value(s);
  if (m == kNegInf) return Distribution::uniform(static_cast<int>(s.size()));
  std::vector<double> w(s.size());
  for (std::size_t y = 0; y < s.size(); ++y) w[y] = s[y] == kNegInf ? 0.0 : std::exp(s[y] - m);
  const double z = kernels::compensated_sum(w);
  for (double& v : w) v /= z;
  return Distribution(std::move(w));
}

}  // namespace

Distribution cnml_predict(WorstCaseSolver& solver, const Prefix& history) {
  if (history.complete()) throw ValidationError("cNML needs the current context");
  const int K = solver.hypothesis_class().labels();
  std::vector<double> s(static_cast<std::size_t>(K));
  std::vector<int> lab = history.labels();
  lab.push_back(0);
  for (int y = 0; y < K; ++y) {
    lab.back() = y;
    s[static_cast<std::size_t>(y)] = solver.value(Prefix(history.contexts(), lab)).log();
  }
  return normalize_scores(s);
}

Distribution cnml_predict(const HypothesisClass& cls, int horizon, const Prefix& history,
                          const ContextConstraint& constraint) {
  WorstCaseSolver solver(cls, horizon, constraint);
  return cnml_predict(solver, history);
}

CnmlForecaster::CnmlForecaster(HypothesisClass cls, int horizon, ContextConstraint constraint,
                               std::uint64_t budget)
    : solver_(std::make_shared<WorstCaseSolver>(std::move(cls), horizon, std::move(constraint),
                                                budget)) {}

std::unique_ptr<Forecaster> CnmlForecaster::clone() const {
  auto f = std::make_unique<CnmlForecaster>(*this);
  f->reset();
  return f;
}

Distribution CnmlForecaster::predict_impl() {
  return cnml_predict(*solver_, Prefix(contexts(), labels()));
}

std::unique_ptr<Forecaster> UniformForecaster::clone() const {
  return std::make_unique<UniformForecaster>(labels_);
}

BayesMixtureForecaster::BayesMixtureForecaster(HypothesisClass cls) : cls_(std::move(cls)) {
  cls_.experts();
}

std::unique_ptr<Forecaster> BayesMixtureForecaster::clone() const {
  return std::make_unique<BayesMixtureForecaster>(cls_);
}

Distribution BayesMixtureForecaster::predict_impl() {
  const std::size_t t = labels().size();
  const std::span<const int> past_ctx(contexts().data(), t);
  std::vector<double> logw;
  for (const Expert& f : cls_.experts()) logw.push_back(likelihood(f, past_ctx, labels()).log());
  const double lse = kernels::log_sum_exp(logw);
  const int K = cls_.labels();
  if (lse == kNegInf) return Distribution::uniform(K);
  std::vector<double> mix(static_cast<std::size_t>(K), 0.0);
  std::vector<double> p(static_cast<std::size_t>(K));
  const HistoryView h{contexts(), labels()};
  for (std::size_t i = 0; i < cls_.size(); ++i) {
    if (logw[i] == kNegInf) continue;
    const double w = std::exp(logw[i] - lse);
    cls_.experts()[i].predict(h, p);
    for (int y = 0; y < K; ++y) mix[static_cast<std::size_t>(y)] += w * p[static_cast<std::size_t>(y)];
  }
  double z = 0.0;
  for (double v : mix) z += v;
  for (double& v : mix) v /= z;
  return Distribution(std::move(mix));
}

std::unique_ptr<Forecaster> ExpertForecaster::clone() const {
  return std::make_unique<ExpertForecaster>(expert_);
}

Distribution ExpertForecaster::predict_impl() {
  return expert_.prediction(HistoryView{contexts(), labels()});
}

TruncatedForecaster::TruncatedForecaster(std::unique_ptr<Forecaster> base, double delta)
    : base_(std::move(base)), delta_(delta) {
  check_truncation_level(delta);
}

std::string TruncatedForecaster::name() const { return "truncated(" + base_->name() + ")"; }

std::unique_ptr<Forecaster> TruncatedForecaster::clone() const {
  return std::make_unique<TruncatedForecaster>(base_->clone(), delta_);
}

void TruncatedForecaster::on_reset() { base_->reset(); }

Distribution TruncatedForecaster::predict_impl() {
  // Bring the base up to date with the previous round's label.
  const std::size_t t = labels().size();
  if (base_->labels().size() < t) base_->observe(labels().back());
  return truncate_dist(base_->predict(contexts().back()), delta_);
}

namespace {

std::vector<double> normalize_paths(const std::vector<double>& logs) {
  const double lse = kernels::log_sum_exp(logs);
  if (lse == kNegInf) throw ValidationError("Shtarkov sum is zero; NML is undefined");
  std::vector<double> p(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    p[i] = logs[i] == kNegInf ? 0.0 : std::exp(logs[i] - lse);
  }
  return p;
}

}  // namespace

std::vector<double> nml_distribution(const HypothesisClass& cls, int horizon) {
  if (horizon < 0) throw ValidationError("horizon must be >= 0");
  const std::vector<int> zeros(static_cast<std::size_t>(horizon), 0);
  return normalize_paths(path_sup_values(cls, ContextTree::constant(cls.labels(), zeros)));
}

std::vector<double> fixed_design_nml(const HypothesisClass& cls, std::span<const int> contexts) {
  return normalize_paths(path_sup_values(cls, ContextTree::constant(cls.labels(), contexts)));
}

}  // namespace shlab

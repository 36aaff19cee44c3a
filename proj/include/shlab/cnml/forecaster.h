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


#ifndef SHLAB_CNML_FORECASTER_H_
#define SHLAB_CNML_FORECASTER_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "shlab/core/distribution.h"
#include "shlab/core/expert.h"
#include "shlab/core/history.h"
#include "shlab/core/hypothesis_class.h"
#include "shlab/shtarkov/constraint.h"
#include "shlab/shtarkov/worst_case.h"

namespace shlab {

// A sequential learner: each round it is shown x_t, emits a distribution and
// then sees y_t. Instances hold one game's state.
class Forecaster {
 public:
  virtual ~Forecaster() = default;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<Forecaster> clone() const = 0;

  void reset();
  Distribution predict(int context);
  void observe(int label);

  const std::vector<int>& contexts() const { return contexts_; }
  const std::vector<int>& labels() const { return labels_; }

 protected:
  // Called with the history (x_{1:t}, y_{1:t-1}) already recorded.
  virtual Distribution predict_impl() = 0;
  virtual void on_reset() {}

 private:
  std::vector<int> contexts_;
  std::vector<int> labels_;
};

// Contextual NML. The worst-case memo depends only on (class, horizon,
// constraint) and therefore survives reset().
class CnmlForecaster : public Forecaster {
 public:
  CnmlForecaster(HypothesisClass cls, int horizon, ContextConstraint constraint = {},
                 std::uint64_t budget = kDefaultStateBudget);
  std::string name() const override { return "cnml"; }
  std::unique_ptr<Forecaster> clone() const override;
  WorstCaseSolver& solver() { return *solver_; }

 protected:
  Distribution predict_impl() override;

 private:
  std::shared_ptr<WorstCaseSolver> solver_;
};

class UniformForecaster : public Forecaster {
 public:
  explicit UniformForecaster(int labels) : labels_(labels) {}
  std::string name() const override { return "uniform"; }
  std::unique_ptr<Forecaster> clone() const override;

 protected:
  Distribution predict_impl() override { return Distribution::uniform(labels_); }

 private:
  int labels_;
};

// Posterior-weighted average of an explicit class under a uniform prior.
class BayesMixtureForecaster : public Forecaster {
 public:
  explicit BayesMixtureForecaster(HypothesisClass cls);
  std::string name() const override { return "bayes"; }
  std::unique_ptr<Forecaster> clone() const override;

 protected:
  Distribution predict_impl() override;

 private:
  HypothesisClass cls_;
};

// Plays a fixed expert.
class ExpertForecaster : public Forecaster {
 public:
  explicit ExpertForecaster(Expert expert) : expert_(std::move(expert)) {}
  std::string name() const override { return "expert"; }
  std::unique_ptr<Forecaster> clone() const override;

 protected:
  Distribution predict_impl() override;

 private:
  Expert expert_;
};

// Applies T_delta to another forecaster's predictions.
class TruncatedForecaster : public Forecaster {
 public:
  TruncatedForecaster(std::unique_ptr<Forecaster> base, double delta);
  std::string name() const override;
  std::unique_ptr<Forecaster> clone() const override;

 protected:
  Distribution predict_impl() override;
  void on_reset() override;

 private:
  std::unique_ptr<Forecaster> base_;
  double delta_;
};

// Algorithm 1 at the history (x_{1:t}, y_{1:t-1}): p(y) proportional to
// exp S(y), S(y) the worst-case prefix value after appending y; uniform when
// every S(y) is -inf.
Distribution cnml_predict(WorstCaseSolver& solver, const Prefix& history);
Distribution cnml_predict(const HypothesisClass& cls, int horizon, const Prefix& history,
                          const ContextConstraint& constraint = {});

// NML over Y^T in path_code order with every round at context 0. Throws
// ValidationError when the Shtarkov sum is 0.
std::vector<double> nml_distribution(const HypothesisClass& cls, int horizon);

// NML of the class projected on a fixed context sequence.
std::vector<double> fixed_design_nml(const HypothesisClass& cls, std::span<const int> contexts);

}  // namespace shlab

#endif  // SHLAB_CNML_FORECASTER_H_

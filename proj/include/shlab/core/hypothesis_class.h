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

#ifndef SHLAB_CORE_HYPOTHESIS_CLASS_H_
#define SHLAB_CORE_HYPOTHESIS_CLASS_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shlab/core/expert.h"
#include "shlab/core/log_value.h"

namespace shlab {

// sup_f log L(f; y | x) together with whatever identifies the maximizer.
struct SupResult {
  LogValue value;
  std::optional<std::size_t> expert;  // explicit classes: lowest maximizing index
  std::vector<double> parameter;      // oracle classes: maximizing parameter, if known
};

// Oracle answering sup_f log L(f; labels | contexts) over a (possibly
// infinite) family. Sequences have equal length and in-range symbols.
using SupOracle = std::function<SupResult(std::span<const int> contexts, std::span<const int> labels)>;

// The comparator class: either a finite list of experts or a sup oracle.
class HypothesisClass {
 public:
  // Throws ValidationError when `experts` is empty or an expert's alphabet
  // disagrees with the class.
  static HypothesisClass explicit_finite(int labels, int contexts, std::vector<Expert> experts,
                                         std::string name = "explicit");
  static HypothesisClass oracle(int labels, int contexts, std::string name, SupOracle oracle);

  int labels() const { return labels_; }
  int contexts() const { return contexts_; }
  const std::string& name() const { return name_; }
  bool is_explicit() const { return !oracle_; }

  // Throws ValidationError for oracle classes.
  std::span<const Expert> experts() const;
  std::size_t size() const { return experts_.size(); }

  // Validates the sequences, then maximizes (explicit) or delegates (oracle).
  SupResult sup_log_likelihood(std::span<const int> contexts, std::span<const int> labels) const;

  // Applies `fn` to every expert and rebuilds an explicit class.
  HypothesisClass map_experts(const std::function<Expert(const Expert&)>& fn,
                              std::string name) const;

  // Explicit class with `extra` appended.
  HypothesisClass with_expert(Expert extra) const;

 private:
  HypothesisClass() = default;

  int labels_ = 2;
  int contexts_ = 1;
  std::string name_;
  std::vector<Expert> experts_;
  SupOracle oracle_;
};

}  // namespace shlab

#endif  // SHLAB_CORE_HYPOTHESIS_CLASS_H_

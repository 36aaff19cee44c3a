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


#ifndef SHLAB_SHTARKOV_SUBPROB_H_
#define SHLAB_SHTARKOV_SUBPROB_H_

#include <cstddef>
#include <vector>

#include "shlab/core/context_tree.h"
#include "shlab/core/history.h"
#include "shlab/core/hypothesis_class.h"
#include "shlab/core/log_value.h"

namespace shlab {

inline constexpr double kSubProbTolerance = 1e-12;

// A finite list of sub-probability measures on {0..ground_size-1}.
class SubProbClass {
 public:
  // Throws ValidationError on an empty list, a wrong-sized measure, an entry
  // outside [0, 1] or a total mass above 1 + tolerance.
  SubProbClass(std::size_t ground_size, std::vector<std::vector<double>> measures);

  std::size_t ground_size() const { return ground_size_; }
  const std::vector<std::vector<double>>& measures() const { return measures_; }

 private:
  std::size_t ground_size_;
  std::vector<std::vector<double>> measures_;
};

// log sum_k sup_p p(k).
LogValue general_shtarkov(const SubProbClass& cls);

// {y -> L(f; (y_{1:t}, y) | (x_{1:t}, x(y)))} over Y^{depth}; explicit classes
// only.
SubProbClass induce_subprob(const HypothesisClass& cls, const ContextTree& tree,
                            const Prefix& prefix = {});

}  // namespace shlab

#endif  // SHLAB_SHTARKOV_SUBPROB_H_

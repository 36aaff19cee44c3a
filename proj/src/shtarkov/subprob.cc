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


#include "shlab/shtarkov/subprob.h"

#include <cmath>
#include <sstream>

#include "shlab/core/errors.h"
#include "shlab/kernels/kernels.h"
#include "shlab/shtarkov/sums.h"

namespace shlab {

SubProbClass::SubProbClass(std::size_t ground_size, std::vector<std::vector<double>> measures)
    : ground_size_(ground_size), measures_(std::move(measures)) {
  if (measures_.empty()) throw ValidationError("sub-probability class needs >= 1 measure");
  for (std::size_t i = 0; i < measures_.size(); ++i) {
    const auto& m = measures_[i];
    if (m.size() != ground_size_) {
      throw ValidationError("measure " + std::to_string(i) + " has the wrong ground-set size");
    }
    for (double v : m) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError("measure " + std::to_string(i) + " has an entry outside [0, 1]");
      }
    }
    const double mass = kernels::compensated_sum(m);
    if (mass > 1.0 + kSubProbTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "measure " << i << " has total mass " << mass << " > 1";
      throw ValidationError(os.str());
    }
  }
}

LogValue general_shtarkov(const SubProbClass& cls) {
  std::vector<double> sup(cls.ground_size(), 0.0);
  for (const auto& m : cls.measures()) kernels::max_inplace(sup, m);
  return LogValue::from_linear(kernels::compensated_sum(sup));
}

SubProbClass induce_subprob(const HypothesisClass& cls, const ContextTree& tree,
                            const Prefix& prefix) {
  if (!cls.is_explicit()) {
    throw ValidationError("oracle classes cannot be materialized as sub-probability classes");
  }
  std::vector<std::vector<double>> measures;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const HypothesisClass one =
        HypothesisClass::explicit_finite(cls.labels(), cls.contexts(), {cls.experts()[i]});
    std::vector<double> logs = path_sup_values(one, tree, prefix);
    for (double& v : logs) v = std::exp(v);
    measures.push_back(std::move(logs));
  }
  const std::size_t ground = measures.front().size();
  return SubProbClass(ground, std::move(measures));
}

}  // namespace shlab

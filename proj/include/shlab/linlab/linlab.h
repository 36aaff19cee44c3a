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


#ifndef SHLAB_LINLAB_LINLAB_H_
#define SHLAB_LINLAB_LINLAB_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "shlab/core/expert.h"
#include "shlab/core/hypothesis_class.h"
#include "shlab/core/log_value.h"
#include "shlab/covers/covers.h"

namespace shlab {

// e_1, ..., e_T in R^d.
Design orthonormal_design(int horizon, int dim);

// Pairwise |<x_i, x_j>| <= tol and | ||x_i|| - 1 | <= tol.
bool is_orthonormal(const Design& design, double tol = 1e-12);

double lin_eval(std::span<const double> w, std::span<const double> x);
double abslin_eval(std::span<const double> w, std::span<const double> x);

struct LinSupResult {
  LogValue value;
  bool exact = false;       // closed form on an orthonormal design
  std::vector<double> w;    // maximizer
};

struct GradientOptions {
  int iterations = 500;
  double step = 0.1;        // step at iteration k is step / sqrt(k)
  double tolerance = 1e-10;
  std::vector<double> start;  // empty: the witness sum_t s_t x_t / sqrt(T)
};

// sup over the unit ball of prod_t (1 + s_t <w, x_t>) / 2 with s_t = 2 y_t - 1
// and x_t = design[t]. Orthonormal designs get the closed form
// T log((1 + 1/sqrt(T)) / 2), attained at w = sum_t s_t x_t / sqrt(T); any
// other design falls back to projected gradient ascent with exact = false.
LinSupResult lin_sup_likelihood(const Design& design, std::span<const int> labels);

// Projected gradient ascent on the same objective, for any design. Returns
// the best iterate.
LinSupResult lin_sup_gradient(const Design& design, std::span<const int> labels,
                              const GradientOptions& options = {});

// The full class over the unit ball as a sup oracle on an orthonormal design.
// Repeated contexts are handled exactly: per design point, label counts
// (n0, n1) reduce the problem to a separable concave one on the effective
// coordinates under sum c_x^2 <= 1, solved through its Lagrange multiplier.
HypothesisClass linear_class(std::shared_ptr<const Design> design,
                             LinearVariant variant = LinearVariant::kLin);

// Exact sup for counts n1[x], n0[x] (orthonormal design) with the given
// variant; log domain.
double linear_counts_sup(LinearVariant variant, std::span<const double> n1,
                         std::span<const double> n0);

struct LinLowerBoundReport {
  int horizon = 0;
  int dim = 0;
  double conditional_shtarkov_log = 0.0;
  double lower_bound = 0.0;     // T log(1 + 1/sqrt(T))
  double quarter_sqrt_t = 0.0;  // sqrt(T) / 4
  bool chain_holds = false;     // conditional >= lower - 1e-9 and lower >= quarter
  std::uint64_t paths = 0;
};

// Fixed-design Shtarkov sum of the Lin class on e_1..e_T in R^d.
LinLowerBoundReport lin_lower_bound_experiment(int horizon, int dim,
                                               std::uint64_t budget = std::uint64_t{1} << 24);

// Weights with coordinates in {-1 + 2k / steps} inside the unit ball, in
// lexicographic order.
std::vector<std::vector<double>> weight_grid(int dim, int steps);

// Explicit surrogate class of linear experts, one per grid weight.
HypothesisClass linear_grid_class(std::shared_ptr<const Design> design, LinearVariant variant,
                                  int steps);

// The same surrogates as maps X -> [0, 1] for the cover machinery, with
// duplicate functions removed.
RealFunctionClass linear_grid_functions(const Design& design, LinearVariant variant, int steps);

}  // namespace shlab

#endif  // SHLAB_LINLAB_LINLAB_H_

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

#ifndef SHLAB_KERNELS_KERNELS_H_
#define SHLAB_KERNELS_KERNELS_H_

// Data-parallel reductions used by the path-enumeration code. Every kernel
// has a scalar reference implementation; an AVX2 variant is selected at
// runtime when the CPU supports it. Setting SHLAB_ISA=scalar in the
// environment pins the scalar path.

#include <span>
#include <string_view>

namespace shlab::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

// True when the AVX2 variant was compiled in and the CPU reports AVX2+FMA.
bool avx2_available();

// The instruction set currently used by the dispatching entry points.
Isa active_isa();

// Overrides dispatch. Requesting kAvx2 on a machine without it is ignored.
void force_isa(Isa isa);

// Sums returned by exp_moments; both are compensated.
struct ExpMoments {
  double sum = 0.0;         // sum_i exp(v_i)
  double sum_squares = 0.0; // sum_i exp(2 v_i)
};

// Maximum element; -inf for an empty span.
double max_value(std::span<const double> values);

// acc[i] = max(acc[i], values[i]). Spans must have equal length.
void max_inplace(std::span<double> acc, std::span<const double> values);

// log(sum_i exp(v_i)) with the max-shift; -inf for empty or all -inf input.
double log_sum_exp(std::span<const double> log_values);

// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

// Compensated first and second moments of exp(v_i) in linear domain.
ExpMoments exp_moments(std::span<const double> log_values);

namespace scalar {
double max_value(std::span<const double> values);
void max_inplace(std::span<double> acc, std::span<const double> values);
double log_sum_exp(std::span<const double> log_values);
double compensated_sum(std::span<const double> values);
ExpMoments exp_moments(std::span<const double> log_values);
}  // namespace scalar

#if defined(SHLAB_HAVE_AVX2)
namespace avx2 {
double max_value(std::span<const double> values);
void max_inplace(std::span<double> acc, std::span<const double> values);
double log_sum_exp(std::span<const double> log_values);
double compensated_sum(std::span<const double> values);
ExpMoments exp_moments(std::span<const double> log_values);

// Vector exp used by the reductions; exposed for equivalence tests. Lanes
// outside [-708, 700] are evaluated with std::exp.
void exp_array(std::span<const double> in, std::span<double> out);
}  // namespace avx2
#endif

}  // namespace shlab::kernels

#endif  // SHLAB_KERNELS_KERNELS_H_

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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "shlab/kernels/kernels.h"

namespace shlab::kernels {
namespace {

bool detect_avx2() {
#if defined(SHLAB_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  if (!detect_avx2()) return Isa::kScalar;
  const char* env = std::getenv("SHLAB_ISA");
  if (env != nullptr && std::string_view(env) == "scalar") return Isa::kScalar;
  return Isa::kAvx2;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

inline bool use_avx2() {
#if defined(SHLAB_HAVE_AVX2)
  return current().load(std::memory_order_relaxed) == Isa::kAvx2;
#else
  return false;
#endif
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool avx2_available() {
  static const bool available = detect_avx2();
  return available;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::kAvx2 && !avx2_available()) return;
  current().store(isa, std::memory_order_relaxed);
}

#if defined(SHLAB_HAVE_AVX2)
#define SHLAB_DISPATCH(fn, ...) \
  return use_avx2() ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define SHLAB_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

double max_value(std::span<const double> values) { SHLAB_DISPATCH(max_value, values); }

void max_inplace(std::span<double> acc, std::span<const double> values) {
  SHLAB_DISPATCH(max_inplace, acc, values);
}

double log_sum_exp(std::span<const double> log_values) {
  SHLAB_DISPATCH(log_sum_exp, log_values);
}

double compensated_sum(std::span<const double> values) {
  SHLAB_DISPATCH(compensated_sum, values);
}

ExpMoments exp_moments(std::span<const double> log_values) {
  SHLAB_DISPATCH(exp_moments, log_values);
}

#undef SHLAB_DISPATCH

}  // namespace shlab::kernels

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

// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the dispatcher has checked CPU support.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "shlab/kernels/kernels.h"

namespace shlab::kernels::avx2 {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Lanes in this range take the polynomial path; anything else finite is
// handed to std::exp so that subnormal and near-overflow results agree with
// the scalar reference.
constexpr double kFastLow = -708.0;
constexpr double kFastHigh = 700.0;

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  hi = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, hi));
}

// exp(x) for x in [kFastLow, kFastHigh]: Cody-Waite reduction by ln 2 and a
// degree-13 Taylor polynomial on |r| <= ln(2)/2 (truncation error < 5e-18).
inline __m256d exp_core(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, ln2_hi, x);
  r = _mm256_fnmadd_pd(k, ln2_lo, r);

  static constexpr double kCoeff[] = {
      1.0 / 6227020800.0,  // 1/13!
      1.0 / 479001600.0,   1.0 / 39916800.0, 1.0 / 3628800.0, 1.0 / 362880.0,
      1.0 / 40320.0,       1.0 / 5040.0,     1.0 / 720.0,     1.0 / 120.0,
      1.0 / 24.0,          1.0 / 6.0,        0.5,             1.0,
      1.0};
  __m256d p = _mm256_set1_pd(kCoeff[0]);
  for (int i = 1; i < 14; ++i) {
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kCoeff[i]));
  }

  const __m128i k32 = _mm256_cvtpd_epi32(k);
  __m256i bits = _mm256_cvtepi32_epi64(k32);
  bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
  bits = _mm256_slli_epi64(bits, 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

inline __m256d exp_pd(__m256d x) {
  const __m256d lo = _mm256_set1_pd(kFastLow);
  const __m256d hi = _mm256_set1_pd(kFastHigh);
  const __m256d neg_inf = _mm256_set1_pd(kNegInf);
  const __m256d is_neg_inf = _mm256_cmp_pd(x, neg_inf, _CMP_EQ_OQ);
  const __m256d in_range = _mm256_and_pd(_mm256_cmp_pd(x, lo, _CMP_GE_OQ),
                                         _mm256_cmp_pd(x, hi, _CMP_LE_OQ));
  const int slow = ~_mm256_movemask_pd(_mm256_or_pd(in_range, is_neg_inf)) & 0xF;
  if (slow != 0) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, x);
    for (double& v : lanes) v = std::exp(v);
    return _mm256_load_pd(lanes);
  }
  const __m256d safe = _mm256_blendv_pd(x, _mm256_setzero_pd(), is_neg_inf);
  const __m256d e = exp_core(safe);
  return _mm256_blendv_pd(e, _mm256_setzero_pd(), is_neg_inf);
}

// Branch-free Neumaier step on four independent lanes.
inline void neumaier_add(__m256d x, __m256d& sum, __m256d& comp) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d t = _mm256_add_pd(sum, x);
  const __m256d abs_sum = _mm256_andnot_pd(sign_mask, sum);
  const __m256d abs_x = _mm256_andnot_pd(sign_mask, x);
  const __m256d sum_big = _mm256_cmp_pd(abs_sum, abs_x, _CMP_GE_OQ);
  const __m256d a = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
  const __m256d b = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
  comp = _mm256_add_pd(comp, _mm256_blendv_pd(b, a, sum_big));
  sum = t;
}

inline void neumaier_add(double x, double& sum, double& comp) {
  const double t = sum + x;
  if (std::fabs(sum) >= std::fabs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
}

// Folds the lane sums, then the lane compensations, into a scalar accumulator.
inline void fold_lanes(__m256d sum, __m256d comp, double& s, double& c) {
  alignas(32) double ls[4];
  alignas(32) double lc[4];
  _mm256_store_pd(ls, sum);
  _mm256_store_pd(lc, comp);
  for (double v : ls) neumaier_add(v, s, c);
  for (double v : lc) neumaier_add(v, s, c);
}

}  // namespace

double max_value(std::span<const double> values) {
  const double* p = values.data();
  const std::size_t n = values.size();
  std::size_t i = 0;
  double best = kNegInf;
  if (n >= 4) {
    __m256d acc = _mm256_set1_pd(kNegInf);
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(p + i));
    best = hmax(acc);
  }
  for (; i < n; ++i) {
    if (p[i] > best) best = p[i];
  }
  return best;
}

void max_inplace(std::span<double> acc, std::span<const double> values) {
  const std::size_t n = acc.size() < values.size() ? acc.size() : values.size();
  double* a = acc.data();
  const double* v = values.data();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(a + i, _mm256_max_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(v + i)));
  }
  for (; i < n; ++i) {
    if (v[i] > a[i]) a[i] = v[i];
  }
}

double log_sum_exp(std::span<const double> log_values) {
  const double m = max_value(log_values);
  if (m == kNegInf) return kNegInf;
  if (std::isinf(m)) return m;
  const double* p = log_values.data();
  const std::size_t n = log_values.size();
  std::size_t i = 0;
  double s = 0.0, c = 0.0;
  if (n >= 4) {
    const __m256d shift = _mm256_set1_pd(m);
    __m256d sum = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
      neumaier_add(exp_pd(_mm256_sub_pd(_mm256_loadu_pd(p + i), shift)), sum, comp);
    }
    fold_lanes(sum, comp, s, c);
  }
  for (; i < n; ++i) neumaier_add(std::exp(p[i] - m), s, c);
  return m + std::log(s + c);
}

double compensated_sum(std::span<const double> values) {
  const double* p = values.data();
  const std::size_t n = values.size();
  std::size_t i = 0;
  double s = 0.0, c = 0.0;
  if (n >= 4) {
    __m256d sum = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) neumaier_add(_mm256_loadu_pd(p + i), sum, comp);
    fold_lanes(sum, comp, s, c);
  }
  for (; i < n; ++i) neumaier_add(p[i], s, c);
  return s + c;
}

ExpMoments exp_moments(std::span<const double> log_values) {
  const double* p = log_values.data();
  const std::size_t n = log_values.size();
  std::size_t i = 0;
  double s1 = 0.0, c1 = 0.0, s2 = 0.0, c2 = 0.0;
  if (n >= 4) {
    __m256d sum1 = _mm256_setzero_pd(), comp1 = _mm256_setzero_pd();
    __m256d sum2 = _mm256_setzero_pd(), comp2 = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
      const __m256d e = exp_pd(_mm256_loadu_pd(p + i));
      neumaier_add(e, sum1, comp1);
      neumaier_add(_mm256_mul_pd(e, e), sum2, comp2);
    }
    fold_lanes(sum1, comp1, s1, c1);
    fold_lanes(sum2, comp2, s2, c2);
  }
  for (; i < n; ++i) {
    const double e = std::exp(p[i]);
    neumaier_add(e, s1, c1);
    neumaier_add(e * e, s2, c2);
  }
  return {s1 + c1, s2 + c2};
}

void exp_array(std::span<const double> in, std::span<double> out) {
  const std::size_t n = in.size() < out.size() ? in.size() : out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out.data() + i, exp_pd(_mm256_loadu_pd(in.data() + i)));
  for (; i < n; ++i) out[i] = std::exp(in[i]);
}

}  // namespace shlab::kernels::avx2

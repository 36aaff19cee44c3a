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


#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "shlab/kernels/kernels.h"

namespace k = shlab::kernels;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> random_values(std::size_t n, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

bool close_rel(double a, double b, double rel) {
  if (a == b) return true;
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

TEST_CASE("scalar reductions on edge inputs") {
  std::vector<double> empty;
  CHECK(k::scalar::max_value(empty) == kNegInf);
  CHECK(k::scalar::log_sum_exp(empty) == kNegInf);
  std::vector<double> dead{kNegInf, kNegInf, kNegInf};
  CHECK(k::scalar::log_sum_exp(dead) == kNegInf);
  std::vector<double> two{std::log(0.25), std::log(0.75)};
  CHECK(k::scalar::log_sum_exp(two) == doctest::Approx(0.0).epsilon(1e-15));
  std::vector<double> ones(1000, 0.1);
  CHECK(k::scalar::compensated_sum(ones) == doctest::Approx(100.0).epsilon(1e-15));
}

TEST_CASE("log_sum_exp survives large offsets") {
  std::vector<double> v{1000.0, 1000.0};
  CHECK(k::log_sum_exp(v) == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-15));
  std::vector<double> w{-1000.0, -1000.0 + std::log(3.0)};
  CHECK(k::log_sum_exp(w) == doctest::Approx(-1000.0 + std::log(4.0)).epsilon(1e-15));
}

TEST_CASE("dispatch can be pinned to scalar") {
  const k::Isa before = k::active_isa();
  k::force_isa(k::Isa::kScalar);
  CHECK(k::active_isa() == k::Isa::kScalar);
  k::force_isa(before);
  CHECK(k::active_isa() == before);
}

#if defined(SHLAB_HAVE_AVX2)
TEST_CASE("avx2 kernels match the scalar reference") {
  if (!k::avx2_available()) return;
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 64u, 1001u}) {
    CAPTURE(n);
    auto v = random_values(n, 17 + n, -30.0, 5.0);
    if (n > 2) v[1] = kNegInf;
    CHECK(k::avx2::max_value(v) == k::scalar::max_value(v));
    CHECK(close_rel(k::avx2::log_sum_exp(v), k::scalar::log_sum_exp(v), 2e-15));
    auto lin = random_values(n, 99 + n, 0.0, 1.0);
    CHECK(close_rel(k::avx2::compensated_sum(lin), k::scalar::compensated_sum(lin), 2e-15));
    const auto ms = k::scalar::exp_moments(v);
    const auto ma = k::avx2::exp_moments(v);
    CHECK(close_rel(ma.sum, ms.sum, 2e-15));
    CHECK(close_rel(ma.sum_squares, ms.sum_squares, 2e-15));
    auto acc_s = random_values(n, 5 + n, -3.0, 3.0);
    auto acc_a = acc_s;
    k::scalar::max_inplace(acc_s, v);
    k::avx2::max_inplace(acc_a, v);
    CHECK(acc_s == acc_a);
  }
}

TEST_CASE("avx2 exp is accurate across the range") {
  if (!k::avx2_available()) return;
  auto v = random_values(4096, 3, -745.0, 709.0);
  v.push_back(kNegInf);
  v.push_back(0.0);
  v.push_back(-708.5);
  std::vector<double> out(v.size());
  k::avx2::exp_array(v, out);
  for (std::size_t i = 0; i < v.size(); ++i) {
    CAPTURE(v[i]);
    CHECK(close_rel(out[i], std::exp(v[i]), 4e-16 * 4));
  }
}

TEST_CASE("avx2 reductions on all -inf input") {
  if (!k::avx2_available()) return;
  std::vector<double> dead(9, kNegInf);
  CHECK(k::avx2::log_sum_exp(dead) == kNegInf);
  CHECK(k::avx2::max_value(dead) == kNegInf);
  CHECK(k::avx2::exp_moments(dead).sum == 0.0);
}
#endif

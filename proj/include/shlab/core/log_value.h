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

#ifndef SHLAB_CORE_LOG_VALUE_H_
#define SHLAB_CORE_LOG_VALUE_H_

#include <cmath>
#include <compare>
#include <limits>

namespace shlab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(a) + log(b) with an absorbing -inf.
inline double log_mul(double a, double b) {
  if (a == kNegInf || b == kNegInf) return kNegInf;
  return a + b;
}

// log(exp(a) + exp(b)) in max-shift form; -inf is the identity.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) {
    const double t = a;
    a = b;
    b = t;
  }
  return a + std::log1p(std::exp(b - a));
}

// A nonnegative quantity stored by its logarithm. The default value is zero
// (log = -inf). Products map to log addition, sums to log-sum-exp.
class LogValue {
 public:
  constexpr LogValue() = default;

  static constexpr LogValue zero() { return LogValue(); }
  static constexpr LogValue one() { return from_log(0.0); }
  static constexpr LogValue from_log(double log_value) {
    LogValue v;
    v.log_ = log_value;
    return v;
  }
  static LogValue from_linear(double linear) {
    return from_log(linear <= 0.0 ? kNegInf : std::log(linear));
  }

  constexpr double log() const { return log_; }
  double linear() const { return std::exp(log_); }
  constexpr bool is_zero() const { return log_ == kNegInf; }

  LogValue& operator*=(LogValue other) {
    log_ = log_mul(log_, other.log_);
    return *this;
  }
  LogValue& operator+=(LogValue other) {
    log_ = log_add(log_, other.log_);
    return *this;
  }
  friend LogValue operator*(LogValue a, LogValue b) { return a *= b; }
  friend LogValue operator+(LogValue a, LogValue b) { return a += b; }

  friend constexpr bool operator==(LogValue a, LogValue b) { return a.log_ == b.log_; }
  friend constexpr std::partial_ordering operator<=>(LogValue a, LogValue b) {
    return a.log_ <=> b.log_;
  }

 private:
  double log_ = kNegInf;
};

}  // namespace shlab

#endif  // SHLAB_CORE_LOG_VALUE_H_

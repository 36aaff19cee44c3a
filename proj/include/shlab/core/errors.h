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

#ifndef SHLAB_CORE_ERRORS_H_
#define SHLAB_CORE_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad lengths, out-of-alphabet symbols, invalid
// distributions, schema violations.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed its configured budget. Never silently
// truncated.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : Error(what + ": requires " + std::to_string(required) + " > budget " +
              std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

// Saturating integer power; returns UINT64_MAX on overflow.
std::uint64_t saturating_pow(std::uint64_t base, int exponent);

// Saturating helpers for budget arithmetic.
std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

// Throws BudgetExceeded when required > budget.
void require_budget(const std::string& what, std::uint64_t required, std::uint64_t budget);

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

}  // namespace shlab

#endif  // SHLAB_CORE_ERRORS_H_

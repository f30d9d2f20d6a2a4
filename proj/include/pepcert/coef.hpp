// Copyright 2026 The pepcert Authors
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

#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace pepcert {

/// A scalar coefficient that stays an exact rational for as long as every
/// operand it was computed from was exact. As soon as an inexact (floating)
/// value enters an operation, the result degrades to a double.
///
/// Multiplying anything by an exact zero yields an exact zero, so symbolic
/// cancellations such as `0 * sqrt(5)` do not leave floating-point residue in
/// assembled expressions.
class Coef {
 public:
  Coef() = default;
  Coef(int value) : q_(value) {}   // NOLINT(google-explicit-constructor)
  Coef(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)

  static Coef exact(const mpq_class& q);
  static Coef ratio(long num, long den);
  /// Floating value, kept inexact.
  static Coef real(double value);
  /// Exact rational equal to the shortest decimal that round-trips `value`
  /// (so 0.1 becomes 1/10, not the nearest binary fraction).
  static Coef from_decimal(double value);
  /// Parses "3", "-2/7", "0.125", "1e-3". Throws std::invalid_argument.
  static Coef parse(std::string_view text);

  bool is_exact() const { return exact_; }
  bool is_zero() const;
  double to_double() const;
  /// Requires is_exact().
  const mpq_class& rational() const;

  /// "p/q" (or "p") when exact, otherwise shortest round-trip decimal.
  std::string str() const;

  Coef operator-() const;
  Coef& operator+=(const Coef& o);
  Coef& operator-=(const Coef& o);
  Coef& operator*=(const Coef& o);
  Coef& operator/=(const Coef& o);

  friend Coef operator+(Coef a, const Coef& b) { return a += b; }
  friend Coef operator-(Coef a, const Coef& b) { return a -= b; }
  friend Coef operator*(Coef a, const Coef& b) { return a *= b; }
  friend Coef operator/(Coef a, const Coef& b) { return a /= b; }

  /// Exact comparison when both sides are exact, numeric otherwise.
  friend bool operator==(const Coef& a, const Coef& b);
  friend std::partial_ordering operator<=>(const Coef& a, const Coef& b);

 private:
  bool exact_ = true;
  mpq_class q_{0};
  double d_ = 0.0;
};

/// Square root; exact when the argument is a rational perfect square.
Coef sqrt(const Coef& c);
Coef abs(const Coef& c);

std::ostream& operator<<(std::ostream& os, const Coef& c);

/// Shortest decimal string that round-trips through strtod.
std::string shortest_decimal(double value);

}  // namespace pepcert

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

// Worst cases over quadratics f(x) = 1/2 (x - x*)^T H (x - x*) + f* with
// spec(H) in [mu, L]. On such functions an explicit method satisfies
// x_t - x* = P_t(H)(x_0 - x*) for a polynomial with P_t(0) = 1, so every
// worst case reduces to a sup over one eigenvalue.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pepcert/coef.hpp"
#include "pepcert/function_class.hpp"
#include "pepcert/method.hpp"
#include "pepcert/pep.hpp"

namespace pepcert {

class QuadraticError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Monomial coefficients c_0, c_1, ... (trailing zeros trimmed).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Coef> c);
  static Polynomial constant(const Coef& c) { return Polynomial({c}); }
  /// The monomial lambda^k.
  static Polynomial monomial(int k, const Coef& c = Coef(1));

  const std::vector<Coef>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  ///< -1 for zero
  bool is_exact() const;

  Coef operator()(const Coef& x) const;
  double operator()(double x) const;
  Polynomial derivative() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Coef& s, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// "1 − 2/11·λ + …"
  std::string str() const;

 private:
  void trim();
  std::vector<Coef> c_;
};

/// P_0, ..., P_T of the iterates. Throws QuadraticError for implicit methods.
std::vector<Polynomial> residual_polynomials(const MethodSpec& method);
/// One polynomial per query (iterates and auxiliary points).
std::vector<Polynomial> query_polynomials(const MethodSpec& method);

struct QuadraticBound {
  double value = 0.0;
  /// Set when the maximizer and the value are exact rationals.
  std::optional<Coef> exact;
  double lambda_star = 0.0;
};

/// sup |P(lambda)| over [mu, L]. Exact critical points for degree <= 2,
/// otherwise a Chebyshev grid of 4 deg + 64 nodes with Newton refinement.
/// Throws QuadraticError when mu > L or L is not finite.
QuadraticBound worst_case_quadratic(const Polynomial& P, const Coef& mu, const Coef& L);

/// sup |N(lambda)| / lambda^d over [mu, L] (d in {0, 1}, mu > 0 when d = 1).
QuadraticBound sup_ratio(const Polynomial& N, int d, const Coef& mu, const Coef& L);

/// Smallest tau with metric <= tau * init on every quadratic of the class:
/// the ratio of their spectral weights times P_T^2. Infinite when the ratio is
/// unbounded (mu = 0 with a function-value initialization). Throws
/// QuadraticError for the min-gradient metric or L = +inf.
QuadraticBound quadratic_worst_case(const MethodSpec& method, const FunctionClassSpec& cls,
                                    const PerformanceMetric& metric, const InitialCondition& init);

}  // namespace pepcert

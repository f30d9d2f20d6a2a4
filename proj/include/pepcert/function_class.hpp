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

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pepcert/coef.hpp"
#include "pepcert/expr.hpp"

namespace pepcert {

class InvalidClass : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// L-smooth, mu-strongly convex functions. An empty `L` stands for L = +inf,
/// in which case every 1/L term vanishes exactly.
struct FunctionClassSpec {
  Coef mu;
  std::optional<Coef> L;

  /// Throws InvalidClass unless 0 <= mu < L.
  static FunctionClassSpec smooth_strongly_convex(const Coef& mu, std::optional<Coef> L);

  void validate() const;
  bool smooth() const { return L.has_value(); }
  /// 1/L, or exact zero when L = +inf.
  Coef inv_L() const;
  /// mu / L, zero when L = +inf.
  Coef kappa() const;
  /// mu / (2 (1 - kappa)): weight of the strong-convexity term.
  Coef strong_convexity_weight() const;
  /// Whether the interpolation inequalities depend on (mu, L) at all.
  bool parametric() const { return smooth() || !mu.is_zero(); }
  std::string describe() const;
};

/// A point at which the oracle (value and gradient) is known to the analysis.
struct InterpolationPoint {
  std::string tag;      ///< used in constraint ids: "*", "0", "1", "y2"
  std::string display;  ///< "x⋆", "x_1", "y_2"
  VectorExpr position;
  std::optional<BasisLabel> gradient;  ///< absent for the optimizer
  int f_index = 0;
  /// Iteration at which the oracle value becomes available (0 for x0 and x⋆).
  int iteration = 0;
  bool is_star = false;

  VectorExpr gradient_expr() const {
    return gradient ? VectorExpr::unit(*gradient) : VectorExpr();
  }
};

/// Ordered points; the optimizer, when present, comes first and carries
/// function-value index 0.
struct PointSet {
  std::vector<InterpolationPoint> points;

  int size() const { return static_cast<int>(points.size()); }
  const InterpolationPoint& at(int i) const { return points.at(i); }
  std::optional<int> find_tag(const std::string& tag) const;
};

/// One atom "IC(i,j)" per ordered pair i != j:
///   f_j - f_i + <g_j, x_i - x_j> + 1/(2L) |g_i - g_j|^2
///       + mu/(2(1 - mu/L)) |x_i - g_i/L - x_j + g_j/L|^2 <= 0.
std::vector<ConstraintAtom> interpolation_constraints(const FunctionClassSpec& cls,
                                                      const PointSet& pts, const Basis& basis);

struct OracleSample {
  Eigen::VectorXd x;
  Eigen::VectorXd g;
  double f = 0.0;
};

struct MembershipResult {
  bool member = true;
  /// Largest left-hand side over all ordered pairs (<= tol for members).
  double worst_violation = 0.0;
  int worst_i = -1;
  int worst_j = -1;
};

/// Decides whether the samples are interpolable by a function of the class,
/// evaluating every interpolation inequality numerically.
MembershipResult membership_check(const std::vector<OracleSample>& data,
                                  const FunctionClassSpec& cls, double tol);

}  // namespace pepcert

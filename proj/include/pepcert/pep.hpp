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

// Assembly of the lifted performance-estimation problem
//
//   maximize    <F, v_P> + <G, M_P>
//   subject to  <F, v_k> + <G, M_k> + c_k (<= or =) 0   for every atom k,
//               G PSD,
//
// from a function class, a method, a performance metric and an initial
// condition. Explicit iterates are substituted into every expression and
// never appear in the Gram basis; free points stay in it.

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

#include "pepcert/expr.hpp"
#include "pepcert/function_class.hpp"
#include "pepcert/method.hpp"

namespace pepcert {

class PepError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PerformanceMetric {
  enum class Kind { FunctionValueGap, DistanceSquared, GradientNormSquared, MinGradientNormSquared };
  Kind kind = Kind::FunctionValueGap;
  /// Point tags ("0", "3", "y2"). Empty means the final iterate, or every
  /// iterate for the min-gradient metric.
  std::vector<std::string> at;
};

struct InitialCondition {
  enum class Kind { DistanceSquared, FunctionValueGap };
  Kind kind = Kind::DistanceSquared;
  /// The constraint reads init(x0) <= R^2.
  Coef R = Coef(1);
};

std::string to_string(PerformanceMetric::Kind kind);
std::string to_string(InitialCondition::Kind kind);

struct PepProblem {
  FunctionClassSpec cls;
  MethodSpec method;
  PerformanceMetric metric;
  InitialCondition init;

  Basis basis;
  int f_dim = 0;
  std::vector<std::string> f_names;
  /// Optimizer first, then one entry per distinct oracle point.
  PointSet points;
  /// Query ordinal -> index into `points` (duplicated queries share a point).
  std::vector<int> query_point;
  ScalarExpr objective;
  std::vector<ConstraintAtom> atoms;
  /// Function-value coordinates that hold epigraph scalars.
  std::vector<int> epigraph;
  /// The performance measure and initial measure (without the -R^2 offset).
  ScalarExpr metric_expr;
  ScalarExpr init_expr;
  std::string metric_notation;  ///< "f(x_3) − f⋆", "min(‖∇f(x_0)‖², …)"
  std::string init_notation;

  int n() const { return basis.size(); }
  int atom_count() const { return static_cast<int>(atoms.size()); }
  int init_atom() const;
  /// -1 when absent.
  int find_atom(const std::string& id) const;
  /// Throws PepError if an atom does not conform to the basis / f-dimension,
  /// the objective has a constant, or there is not exactly one init atom.
  void validate() const;
  /// Index into `points` of the iterate x_t.
  int iterate_point(int t) const { return query_point.at(method.iterates.at(t)); }
  /// Largest iteration index among the points an atom touches (0 if none).
  int step_index(const ConstraintAtom& atom) const;
};

PepProblem build(const FunctionClassSpec& cls, const MethodSpec& method,
                 const PerformanceMetric& metric, const InitialCondition& init);

/// SHA-256 (hex) of a canonical serialization of every (v, M, c) atom, the
/// objective, the basis and the class parameters.
std::string fingerprint(const PepProblem& problem);

/// Concrete realization of a (F, G) pair: one oracle sample per point.
struct WorstCaseInstance {
  int dimension = 0;
  /// Coordinates of each basis vector, one column per basis label.
  Eigen::MatrixXd basis_vectors;
  Eigen::VectorXd F;
  /// Aligned with problem.points (optimizer first).
  std::vector<OracleSample> samples;
  double metric_value = 0.0;
  double init_value = 0.0;
};

/// Factorizes G = P^T P through its eigendecomposition, keeping eigenvalues
/// above tol * max(1, lambda_max), and rebuilds every point (explicit iterates
/// included) from the coordinates. Throws PepError if G has an eigenvalue
/// below -tol.
WorstCaseInstance reconstruct_worst_case(const PepProblem& problem, const Eigen::VectorXd& F,
                                         const Eigen::MatrixXd& G, double tol);

/// (F, G) of concrete data: basis_vectors holds one column per basis label.
struct Lifted {
  Eigen::VectorXd F;
  Eigen::MatrixXd G;
};
Lifted lift(const Eigen::MatrixXd& basis_vectors, const Eigen::VectorXd& F);

}  // namespace pepcert

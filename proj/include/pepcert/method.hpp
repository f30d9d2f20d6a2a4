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

// First-order methods as sequences of oracle queries. Query q evaluates the
// oracle at a point and produces gradient label BasisLabel::gradient(q).
//
// A query is either explicit (its point is an affine combination of x0 and
// gradients returned by earlier queries) or free (its point is a new basis
// vector BasisLabel::free_point(q), pinned down only by algorithm relations
// such as the optimality conditions of a line search).

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pepcert/coef.hpp"
#include "pepcert/expr.hpp"

namespace pepcert {

class MethodError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// <left, right> (sense) 0, emitted as an "ALG(k)" constraint.
struct AlgorithmRelation {
  std::string id;
  VectorExpr left;
  VectorExpr right;
  Sense sense = Sense::Equal;
};

struct QueryEvent {
  std::string tag;      ///< "0", "1", "y2": used in constraint ids
  std::string display;  ///< "x_0", "y_2"
  int iteration = 0;
  bool free = false;
  VectorExpr position;
  std::vector<AlgorithmRelation> relations;

  BasisLabel gradient(int q) const { return BasisLabel::gradient(q); }
};

struct MethodSpec {
  std::string name;
  int T = 0;
  std::vector<QueryEvent> queries;
  /// Query ordinals of x_0, ..., x_T.
  std::vector<int> iterates;

  bool is_explicit() const;
  int final_iterate() const { return iterates.back(); }
  int query_count() const { return static_cast<int>(queries.size()); }
  std::size_t relation_count() const;
  /// Causality, free-point and id checks. Throws MethodError.
  void validate() const;
};

/// gamma[k-1][s] is the weight of g_s in query k = x0 - sum_s gamma g_s, for
/// k = 1..N and s < k. Rows may be shorter than k (missing weights are zero).
/// Optional per-row metadata lets non-iterate query points (NAG's y_t)
/// round-trip through the table.
struct CoefficientTable {
  std::vector<std::vector<Coef>> gamma;
  std::vector<std::string> tags;      ///< per query, including query 0
  std::vector<std::string> displays;  ///< per query, including query 0
  std::vector<int> iterations;        ///< per query, including query 0
  std::vector<int> iterates;          ///< empty: every query is an iterate
  std::string name = "explicit";

  int rows() const { return static_cast<int>(gamma.size()); }
  const Coef& at(int k, int s) const;
};

/// Queries at x0 and at every table row; no algorithm relations.
MethodSpec explicit_method(const CoefficientTable& table);
/// Inverse of explicit_method; throws MethodError for implicit methods or
/// points that are not of the form x0 - sum gamma g.
CoefficientTable to_coefficient_table(const MethodSpec& method);

/// Gradient descent x_{t+1} = x_t - step g_t.
MethodSpec gradient_descent(const Coef& step, int T);
/// Nesterov's accelerated gradient with lambda_1 = 1. Queries x_0, then
/// (y_t, x_{t+1}) for t < T; y_0 = x_0 and y_1 = x_1 repeat earlier points.
MethodSpec nag(const Coef& L, int T);
/// lambda_1, ..., lambda_{T+1} of the NAG recursion (index 0 holds lambda_0 = 0).
std::vector<Coef> nag_lambdas(int T);
/// x_t = t/(t+1) x_{t-1} + 1/(t+1) x_0 - 1/(t+1) sum_{s<t} g_s / L.
MethodSpec heavy_ball_qg(const Coef& L, int T);
/// Exact line search via its optimality conditions:
/// <g_t, g_{t-1}> = 0 and <g_t, x_t - x_{t-1}> = 0.
MethodSpec gdls(int T);
/// Greedy span minimization via <g_t, g_s> = 0 (s < t) and
/// <g_t, x_s - x_0> = 0 (1 <= s <= t).
MethodSpec gfom(int T);

}  // namespace pepcert

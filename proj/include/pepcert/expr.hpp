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

// Symbolic algebra over a Gram basis. Vector quantities (points, gradients)
// are finite linear combinations of basis labels; every quadratic quantity is
// linearized into a ScalarExpr (v, M, c) so that its value on concrete data is
// <F, v> + <G, M> + c, with G the Gram matrix of the basis vectors and F the
// vector of function values.

#pragma once

#include <Eigen/Dense>

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pepcert/coef.hpp"

namespace pepcert {

class BasisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BasisLabel {
  enum class Kind { Optimizer, Initial, Free, Gradient };
  Kind kind = Kind::Initial;
  int index = 0;

  static BasisLabel optimizer() { return {Kind::Optimizer, 0}; }
  static BasisLabel initial() { return {Kind::Initial, 0}; }
  static BasisLabel free_point(int i) { return {Kind::Free, i}; }
  /// Gradient returned by the oracle call with query ordinal `q`.
  static BasisLabel gradient(int q) { return {Kind::Gradient, q}; }

  friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

std::string to_string(const BasisLabel& label);

/// Ordered list of the vectors whose pairwise inner products make up G.
class Basis {
 public:
  /// Appends a label; throws BasisError on duplicates.
  int add(const BasisLabel& label, std::string display_name);
  int index_of(const BasisLabel& label) const;
  std::optional<int> find(const BasisLabel& label) const;
  bool contains(const BasisLabel& label) const { return find(label).has_value(); }
  int size() const { return static_cast<int>(labels_.size()); }
  const BasisLabel& label(int i) const { return labels_.at(i); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<BasisLabel>& labels() const { return labels_; }

 private:
  std::vector<BasisLabel> labels_;
  std::vector<std::string> names_;
  std::map<BasisLabel, int> index_;
};

/// Finitely supported linear combination of basis labels. Exact zeros are
/// never stored, so the zero expression has empty support.
class VectorExpr {
 public:
  VectorExpr() = default;
  static VectorExpr unit(const BasisLabel& label, const Coef& weight = Coef(1));

  Coef coefficient(const BasisLabel& label) const;
  const std::map<BasisLabel, Coef>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Replaces every occurrence of `label` by `replacement`.
  VectorExpr substitute(const BasisLabel& label, const VectorExpr& replacement) const;

  VectorExpr& operator+=(const VectorExpr& o);
  VectorExpr& operator-=(const VectorExpr& o);
  VectorExpr& operator*=(const Coef& s);
  friend VectorExpr operator+(VectorExpr a, const VectorExpr& b) { return a += b; }
  friend VectorExpr operator-(VectorExpr a, const VectorExpr& b) { return a -= b; }
  friend VectorExpr operator*(VectorExpr a, const Coef& s) { return a *= s; }
  friend VectorExpr operator*(const Coef& s, VectorExpr a) { return a *= s; }
  VectorExpr operator-() const { return *this * Coef(-1); }
  friend bool operator==(const VectorExpr& a, const VectorExpr& b) { return a.terms_ == b.terms_; }

  /// Coordinates in the given basis; throws BasisError on unknown labels.
  Eigen::VectorXd dense(const Basis& basis) const;

 private:
  void add_term(const BasisLabel& label, const Coef& weight);
  std::map<BasisLabel, Coef> terms_;
};

/// The lifted form <F, v> + <G, M> + c of a quadratic quantity. v is indexed
/// by function-value coordinate, M by basis position. Only the upper triangle
/// of M is stored; entry (i, j) with i <= j is the matrix entry M[i][j] =
/// M[j][i].
class ScalarExpr {
 public:
  ScalarExpr() = default;
  static ScalarExpr constant(const Coef& c);

  Coef v(int f_index) const;
  Coef m(int i, int j) const;
  const Coef& c() const { return c_; }
  const std::map<int, Coef>& v_terms() const { return v_; }
  const std::map<std::pair<int, int>, Coef>& m_terms() const { return m_; }

  void add_v(int f_index, const Coef& weight);
  /// Adds `weight` to the symmetric pair of entries (i, j) and (j, i).
  void add_m(int i, int j, const Coef& weight);
  void add_c(const Coef& weight);

  bool is_zero() const { return v_.empty() && m_.empty() && c_.is_zero(); }
  bool touches_basis(int i) const;
  bool touches_f(int f_index) const;
  /// Largest basis / f index referenced, or -1.
  int max_basis_index() const;
  int max_f_index() const;

  ScalarExpr& operator+=(const ScalarExpr& o);
  ScalarExpr& operator-=(const ScalarExpr& o);
  ScalarExpr& operator*=(const Coef& s);
  friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
  friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
  friend ScalarExpr operator*(ScalarExpr a, const Coef& s) { return a *= s; }
  friend ScalarExpr operator*(const Coef& s, ScalarExpr a) { return a *= s; }
  friend bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
    return a.v_ == b.v_ && a.m_ == b.m_ && a.c_ == b.c_;
  }

  Eigen::VectorXd dense_v(int f_dim) const;
  Eigen::MatrixXd dense_m(int n) const;
  std::vector<Coef> exact_v(int f_dim) const;
  std::vector<std::vector<Coef>> exact_m(int n) const;

  /// <F, v> + <G, M> + c.
  double evaluate(const Eigen::VectorXd& F, const Eigen::MatrixXd& G) const;

 private:
  std::map<int, Coef> v_;
  std::map<std::pair<int, int>, Coef> m_;
  Coef c_;
};

/// <a, b> lifted to the Gram basis: M[p, q] = (a_p b_q + a_q b_p) / 2.
ScalarExpr inner_product(const Basis& basis, const VectorExpr& a, const VectorExpr& b);
ScalarExpr squared_norm(const Basis& basis, const VectorExpr& a);
/// Unit function-value coordinate. Throws BasisError if f_index is outside
/// [0, f_dim).
ScalarExpr fval(int f_index, int f_dim);
ScalarExpr scalar_combine(const std::vector<std::pair<Coef, ScalarExpr>>& terms);

enum class Sense { LessEqual, Equal };
enum class AtomTag { Class, Algorithm, Initialization, Metric };

std::string to_string(Sense sense);
std::string to_string(AtomTag tag);

/// Algorithm constraints of the form <left, right> (sense) 0.
struct InnerRelation {
  VectorExpr left;
  VectorExpr right;
};

/// One constraint row: expr (sense) 0.
struct ConstraintAtom {
  std::string id;
  ScalarExpr expr;
  Sense sense = Sense::LessEqual;
  AtomTag tag = AtomTag::Class;
  /// Indices into the problem's point set of the points this atom involves.
  std::vector<int> points;
  /// True when the atom's coefficients depend on the class parameters.
  bool parameter_dependent = false;
  std::optional<InnerRelation> relation;
  /// Human-readable form, e.g. "f(x_1) - f(x_0) + <∇f(x_1), x_0 - x_1> ...".
  std::string notation;
};

/// Renders a vector expression using basis display names, e.g.
/// "x_1 − x_0 + 20/11·∇f(x_0)".
std::string render(const VectorExpr& e, const Basis& basis);
/// f-terms first, then Gram terms as squared norms and inner products, then
/// the constant: "f(x_1) − f⋆ + 1/2·‖∇f(x_0)‖² − 2·⟨x_0, x⋆⟩".
std::string render(const ScalarExpr& e, const Basis& basis, const std::vector<std::string>& f_names);

}  // namespace pepcert

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

#include "pepcert/function_class.hpp"

#include <cmath>
#include <limits>

#include "pepcert/format.hpp"

namespace pepcert {

FunctionClassSpec FunctionClassSpec::smooth_strongly_convex(const Coef& mu, std::optional<Coef> L) {
  FunctionClassSpec cls{mu, std::move(L)};
  cls.validate();
  return cls;
}

void FunctionClassSpec::validate() const {
  if (mu < Coef(0)) throw InvalidClass("strong convexity modulus mu must be nonnegative");
  if (L && !(mu < *L)) throw InvalidClass("class requires mu < L (got mu=" + mu.str() + ", L=" + L->str() + ")");
}

Coef FunctionClassSpec::inv_L() const { return L ? Coef(1) / *L : Coef(); }

Coef FunctionClassSpec::kappa() const { return L ? mu / *L : Coef(); }

Coef FunctionClassSpec::strong_convexity_weight() const {
  return mu / (Coef(2) * (Coef(1) - kappa()));
}

std::string FunctionClassSpec::describe() const {
  return "F(mu=" + display(mu) + ", L=" + (L ? display(*L) : std::string("inf")) + ")";
}

std::optional<int> PointSet::find_tag(const std::string& tag) const {
  for (int i = 0; i < size(); ++i) {
    if (points[i].tag == tag) return i;
  }
  return std::nullopt;
}

namespace {

std::string fname(const InterpolationPoint& p) { return p.is_star ? "f⋆" : "f(" + p.display + ")"; }
std::string gname(const InterpolationPoint& p) { return "∇f(" + p.display + ")"; }

std::string weighted(const Coef& w, const std::string& body) {
  return w == Coef(1) ? body : display(w) + "·" + body;
}

// Renders IC(i,j) in the "f_j - f_i + ... <= 0" orientation used by the atom.
std::string ic_notation(const FunctionClassSpec& cls, const InterpolationPoint& pi,
                        const InterpolationPoint& pj) {
  std::string s = fname(pj) + " − " + fname(pi);
  if (pj.gradient) s += " + ⟨" + gname(pj) + ", " + pi.display + " − " + pj.display + "⟩";
  const Coef inv_l = cls.inv_L();
  const Coef half_inv_l = inv_l / Coef(2);
  if (!half_inv_l.is_zero() && (pi.gradient || pj.gradient)) {
    std::string diff;
    if (pi.gradient && pj.gradient) {
      diff = gname(pi) + " − " + gname(pj);
    } else {
      diff = pi.gradient ? gname(pi) : gname(pj);
    }
    s += " + " + weighted(half_inv_l, "‖" + diff + "‖²");
  }
  const Coef sc = cls.strong_convexity_weight();
  if (!sc.is_zero()) {
    std::string body = pi.display;
    if (pi.gradient && !inv_l.is_zero()) body += " − " + weighted(inv_l, gname(pi));
    body += " − " + pj.display;
    if (pj.gradient && !inv_l.is_zero()) body += " + " + weighted(inv_l, gname(pj));
    s += " + " + weighted(sc, "‖" + body + "‖²");
  }
  return s;
}

}  // namespace

std::vector<ConstraintAtom> interpolation_constraints(const FunctionClassSpec& cls,
                                                      const PointSet& pts, const Basis& basis) {
  cls.validate();
  if (pts.size() < 2) throw std::invalid_argument("interpolation needs at least two points");
  const Coef inv_l = cls.inv_L();
  const Coef half_inv_l = inv_l / Coef(2);
  const Coef sc = cls.strong_convexity_weight();

  std::vector<ConstraintAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(pts.size()) * (pts.size() - 1));
  for (int i = 0; i < pts.size(); ++i) {
    for (int j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      const InterpolationPoint& pi = pts.at(i);
      const InterpolationPoint& pj = pts.at(j);
      const VectorExpr gi = pi.gradient_expr();
      const VectorExpr gj = pj.gradient_expr();

      ScalarExpr e;
      e.add_v(pj.f_index, Coef(1));
      e.add_v(pi.f_index, Coef(-1));
      e += inner_product(basis, gj, pi.position - pj.position);
      if (!half_inv_l.is_zero()) e += squared_norm(basis, gi - gj) * half_inv_l;
      if (!sc.is_zero()) {
        e += squared_norm(basis, pi.position - gi * inv_l - pj.position + gj * inv_l) * sc;
      }

      // Repeated visits of one point give identically zero inequalities.
      if (e.is_zero()) continue;

      ConstraintAtom atom;
      atom.id = "IC(" + pi.tag + "," + pj.tag + ")";
      atom.expr = std::move(e);
      atom.sense = Sense::LessEqual;
      atom.tag = AtomTag::Class;
      atom.points = {i, j};
      atom.parameter_dependent = cls.parametric();
      atom.notation = ic_notation(cls, pi, pj);
      atoms.push_back(std::move(atom));
    }
  }
  return atoms;
}

MembershipResult membership_check(const std::vector<OracleSample>& data,
                                  const FunctionClassSpec& cls, double tol) {
  cls.validate();
  MembershipResult out;
  if (data.empty()) return out;
  const Eigen::Index d = data.front().x.size();
  for (const auto& s : data) {
    if (s.x.size() != d || s.g.size() != d) throw std::invalid_argument("sample dimension mismatch");
  }
  const double inv_l = cls.inv_L().to_double();
  const double sc = cls.strong_convexity_weight().to_double();
  out.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data.size(); ++j) {
      if (i == j) continue;
      const auto& a = data[i];
      const auto& b = data[j];
      const double lhs = b.f - a.f + b.g.dot(a.x - b.x) + 0.5 * inv_l * (a.g - b.g).squaredNorm() +
                         sc * (a.x - inv_l * a.g - b.x + inv_l * b.g).squaredNorm();
      if (lhs > out.worst_violation) {
        out.worst_violation = lhs;
        out.worst_i = static_cast<int>(i);
        out.worst_j = static_cast<int>(j);
      }
    }
  }
  if (data.size() < 2) out.worst_violation = 0.0;
  out.member = out.worst_violation <= tol;
  return out;
}

}  // namespace pepcert

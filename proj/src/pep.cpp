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

#include "pepcert/pep.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace pepcert {

std::string to_string(PerformanceMetric::Kind kind) {
  switch (kind) {
    case PerformanceMetric::Kind::FunctionValueGap:
      return "function-value-gap";
    case PerformanceMetric::Kind::DistanceSquared:
      return "distance-squared";
    case PerformanceMetric::Kind::GradientNormSquared:
      return "gradient-norm-squared";
    case PerformanceMetric::Kind::MinGradientNormSquared:
      return "min-gradient-norm-squared";
  }
  return "?";
}

std::string to_string(InitialCondition::Kind kind) {
  return kind == InitialCondition::Kind::DistanceSquared ? "distance-squared" : "function-value-gap";
}

int PepProblem::init_atom() const {
  for (int k = 0; k < atom_count(); ++k) {
    if (atoms[k].tag == AtomTag::Initialization) return k;
  }
  return -1;
}

int PepProblem::find_atom(const std::string& id) const {
  for (int k = 0; k < atom_count(); ++k) {
    if (atoms[k].id == id) return k;
  }
  return -1;
}

void PepProblem::validate() const {
  const auto conforms = [&](const ScalarExpr& e) {
    return e.max_basis_index() < n() && e.max_f_index() < f_dim;
  };
  if (!conforms(objective)) throw PepError("objective does not conform to the basis");
  if (!objective.c().is_zero()) throw PepError("objective must not carry a constant");
  int inits = 0;
  std::set<std::string> ids;
  for (const auto& a : atoms) {
    if (!conforms(a.expr)) throw PepError("atom " + a.id + " does not conform to the basis");
    if (!ids.insert(a.id).second) throw PepError("duplicate atom id " + a.id);
    if (a.tag == AtomTag::Initialization) {
      ++inits;
      if (a.sense != Sense::LessEqual) throw PepError("initialization atom must be an inequality");
    }
  }
  if (inits != 1) throw PepError("problem must have exactly one initialization atom");
}

int PepProblem::step_index(const ConstraintAtom& atom) const {
  int step = 0;
  for (int p : atom.points) {
    if (!points.at(p).is_star) step = std::max(step, points.at(p).iteration);
  }
  return step;
}

namespace {

// Rewrites gradients of duplicated queries to the gradient of the query that
// first visited the same point.
VectorExpr resolve_aliases(VectorExpr e, const std::map<BasisLabel, BasisLabel>& aliases) {
  for (const auto& [from, to] : aliases) e = e.substitute(from, VectorExpr::unit(to));
  return e;
}

std::vector<int> touched_points(const VectorExpr& a, const VectorExpr& b, const std::vector<int>& query_point) {
  std::set<int> out;
  for (const VectorExpr* e : {&a, &b}) {
    for (const auto& [label, w] : e->terms()) {
      switch (label.kind) {
        case BasisLabel::Kind::Initial:
          out.insert(query_point.at(0));
          break;
        case BasisLabel::Kind::Free:
        case BasisLabel::Kind::Gradient:
          out.insert(query_point.at(label.index));
          break;
        case BasisLabel::Kind::Optimizer:
          out.insert(0);
          break;
      }
    }
  }
  return {out.begin(), out.end()};
}

int resolve_point(const PepProblem& p, const std::string& tag) {
  auto idx = p.points.find_tag(tag);
  if (!idx || p.points.at(*idx).is_star) {
    // Aliased queries keep their tag only through the query list.
    for (int q = 0; q < p.method.query_count(); ++q) {
      if (p.method.queries[q].tag == tag) return p.query_point[q];
    }
    throw PepError("metric references unqueried point '" + tag + "'");
  }
  return *idx;
}

}  // namespace

PepProblem build(const FunctionClassSpec& cls, const MethodSpec& method, const PerformanceMetric& metric,
                 const InitialCondition& init) {
  cls.validate();
  method.validate();
  if (!(init.R > Coef(0))) throw PepError("initial radius R must be positive");

  PepProblem p;
  p.cls = cls;
  p.method = method;
  p.metric = metric;
  p.init = init;

  p.basis.add(BasisLabel::optimizer(), "x⋆");
  p.basis.add(BasisLabel::initial(), "x_0");
  InterpolationPoint star;
  star.tag = "*";
  star.display = "x⋆";
  star.position = VectorExpr::unit(BasisLabel::optimizer());
  star.f_index = 0;
  star.is_star = true;
  p.points.points.push_back(star);
  p.f_names.push_back("f⋆");

  std::map<BasisLabel, BasisLabel> aliases;
  for (int q = 0; q < method.query_count(); ++q) {
    const QueryEvent& ev = method.queries[q];
    VectorExpr position;
    if (ev.free) {
      p.basis.add(BasisLabel::free_point(q), ev.display);
      position = VectorExpr::unit(BasisLabel::free_point(q));
    } else {
      position = resolve_aliases(ev.position, aliases);
      auto same = std::find_if(p.points.points.begin() + 1, p.points.points.end(),
                               [&](const InterpolationPoint& pt) { return pt.position == position; });
      if (same != p.points.points.end()) {
        // A repeated query shares the oracle coordinates of the first visit
        // but keeps its own point, so its constraints carry its own ordinal.
        aliases.emplace(BasisLabel::gradient(q), *same->gradient);
        InterpolationPoint pt = *same;
        pt.tag = ev.tag;
        pt.display = ev.display;
        pt.iteration = ev.iteration;
        p.points.points.push_back(std::move(pt));
        p.query_point.push_back(p.points.size() - 1);
        continue;
      }
    }
    p.basis.add(BasisLabel::gradient(q), "∇f(" + ev.display + ")");
    InterpolationPoint pt;
    pt.tag = ev.tag;
    pt.display = ev.display;
    pt.position = std::move(position);
    pt.gradient = BasisLabel::gradient(q);
    pt.f_index = static_cast<int>(p.f_names.size());
    pt.iteration = ev.iteration;
    p.points.points.push_back(std::move(pt));
    p.f_names.push_back("f(" + ev.display + ")");
    p.query_point.push_back(p.points.size() - 1);
  }
  p.f_dim = static_cast<int>(p.f_names.size());

  p.atoms = interpolation_constraints(cls, p.points, p.basis);

  for (int q = 0; q < method.query_count(); ++q) {
    for (const auto& rel : method.queries[q].relations) {
      const VectorExpr left = resolve_aliases(rel.left, aliases);
      const VectorExpr right = resolve_aliases(rel.right, aliases);
      ScalarExpr e = inner_product(p.basis, left, right);
      if (e.is_zero()) continue;
      ConstraintAtom atom;
      atom.id = rel.id;
      atom.expr = std::move(e);
      atom.sense = rel.sense;
      atom.tag = AtomTag::Algorithm;
      atom.points = touched_points(left, right, p.query_point);
      atom.relation = InnerRelation{left, right};
      atom.notation = "⟨" + render(left, p.basis) + ", " + render(right, p.basis) + "⟩";
      p.atoms.push_back(std::move(atom));
    }
  }

  const VectorExpr x_star = VectorExpr::unit(BasisLabel::optimizer());
  const InterpolationPoint& start = p.points.at(p.query_point.at(0));
  switch (init.kind) {
    case InitialCondition::Kind::DistanceSquared:
      p.init_expr = squared_norm(p.basis, start.position - x_star);
      break;
    case InitialCondition::Kind::FunctionValueGap:
      p.init_expr = fval(start.f_index, p.f_dim) - fval(0, p.f_dim);
      break;
  }

  std::vector<int> targets;
  if (metric.at.empty()) {
    if (metric.kind == PerformanceMetric::Kind::MinGradientNormSquared) {
      for (std::size_t t = 0; t < method.iterates.size(); ++t) targets.push_back(p.iterate_point(static_cast<int>(t)));
    } else {
      targets.push_back(p.query_point.at(method.final_iterate()));
    }
  } else {
    for (const auto& tag : metric.at) targets.push_back(resolve_point(p, tag));
  }
  if (targets.size() != 1 && metric.kind != PerformanceMetric::Kind::MinGradientNormSquared) {
    throw PepError("metric " + to_string(metric.kind) + " takes exactly one point");
  }

  switch (metric.kind) {
    case PerformanceMetric::Kind::FunctionValueGap: {
      const auto& pt = p.points.at(targets[0]);
      p.metric_expr = fval(pt.f_index, p.f_dim) - fval(0, p.f_dim);
      p.metric_notation = "f(" + pt.display + ") − f⋆";
      break;
    }
    case PerformanceMetric::Kind::DistanceSquared:
      p.metric_expr = squared_norm(p.basis, p.points.at(targets[0]).position - x_star);
      p.metric_notation = "‖" + p.points.at(targets[0]).display + " − x⋆‖²";
      break;
    case PerformanceMetric::Kind::GradientNormSquared:
      p.metric_expr = squared_norm(p.basis, p.points.at(targets[0]).gradient_expr());
      p.metric_notation = "‖∇f(" + p.points.at(targets[0]).display + ")‖²";
      break;
    case PerformanceMetric::Kind::MinGradientNormSquared: {
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      const int s = p.f_dim++;
      p.f_names.push_back("s");
      p.epigraph.push_back(s);
      p.metric_expr = fval(s, p.f_dim);
      p.metric_notation = "min(";
      for (int t : targets) {
        const auto& pt = p.points.at(t);
        ConstraintAtom atom;
        atom.id = "EPI(" + pt.tag + ")";
        atom.expr = fval(s, p.f_dim) - squared_norm(p.basis, pt.gradient_expr());
        atom.sense = Sense::LessEqual;
        atom.tag = AtomTag::Metric;
        atom.points = {t};
        atom.notation = "s − ‖∇f(" + pt.display + ")‖²";
        p.atoms.push_back(std::move(atom));
        p.metric_notation += (t == targets.front() ? "" : ", ") + std::string("‖∇f(") + pt.display + ")‖²";
      }
      p.metric_notation += ")";
      break;
    }
  }
  p.objective = p.metric_expr;

  ConstraintAtom init_atom;
  init_atom.id = "INIT";
  init_atom.expr = p.init_expr - ScalarExpr::constant(init.R * init.R);
  init_atom.sense = Sense::LessEqual;
  init_atom.tag = AtomTag::Initialization;
  init_atom.points = {0, p.query_point.at(0)};
  init_atom.notation = init.kind == InitialCondition::Kind::DistanceSquared ? "‖x_0 − x⋆‖²" : "f(x_0) − f⋆";
  p.init_notation = init_atom.notation;
  p.atoms.push_back(std::move(init_atom));

  p.validate();
  return p;
}

namespace {

void serialize(std::ostream& os, const ScalarExpr& e) {
  os << "v{";
  for (const auto& [k, w] : e.v_terms()) os << k << ':' << w.str() << ';';
  os << "}M{";
  for (const auto& [ij, w] : e.m_terms()) os << ij.first << ',' << ij.second << ':' << w.str() << ';';
  os << "}c{" << e.c().str() << "}";
}

}  // namespace

std::string fingerprint(const PepProblem& problem) {
  std::ostringstream os;
  os << "pepcert-problem/1\n";
  os << "class " << problem.cls.mu.str() << ' ' << (problem.cls.L ? problem.cls.L->str() : "inf") << '\n';
  os << "basis";
  for (int i = 0; i < problem.n(); ++i) os << ' ' << to_string(problem.basis.label(i));
  os << "\nfdim " << problem.f_dim << "\nobjective ";
  serialize(os, problem.objective);
  for (const auto& a : problem.atoms) {
    os << "\natom " << a.id << ' ' << to_string(a.tag) << ' ' << to_string(a.sense) << ' ';
    serialize(os, a.expr);
  }
  const std::string text = os.str();

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), text.data(), text.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xf]);
  }
  return hex;
}

WorstCaseInstance reconstruct_worst_case(const PepProblem& problem, const Eigen::VectorXd& F,
                                         const Eigen::MatrixXd& G, double tol) {
  if (G.rows() != problem.n() || G.cols() != problem.n() || F.size() != problem.f_dim) {
    throw PepError("solution does not conform to the problem");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (G + G.transpose()));
  const Eigen::VectorXd& lam = eig.eigenvalues();
  if (lam.minCoeff() < -tol) {
    throw PepError("Gram matrix has eigenvalue " + std::to_string(lam.minCoeff()) + " below -tol");
  }
  const double cutoff = tol * std::max(1.0, lam.maxCoeff());
  std::vector<int> keep;
  for (int i = static_cast<int>(lam.size()) - 1; i >= 0; --i) {
    if (lam[i] > cutoff) keep.push_back(i);
  }
  if (keep.empty()) keep.push_back(static_cast<int>(lam.size()) - 1);

  WorstCaseInstance out;
  out.dimension = static_cast<int>(keep.size());
  out.basis_vectors.resize(out.dimension, problem.n());
  for (int r = 0; r < out.dimension; ++r) {
    const double scale = std::sqrt(std::max(lam[keep[r]], 0.0));
    out.basis_vectors.row(r) = scale * eig.eigenvectors().col(keep[r]).transpose();
  }
  out.F = F;

  const auto coords = [&](const VectorExpr& e) -> Eigen::VectorXd {
    return out.basis_vectors * e.dense(problem.basis);
  };
  for (const auto& pt : problem.points.points) {
    OracleSample s;
    s.x = coords(pt.position);
    s.g = pt.gradient ? coords(VectorExpr::unit(*pt.gradient)) : Eigen::VectorXd::Zero(out.dimension);
    s.f = F[pt.f_index];
    out.samples.push_back(std::move(s));
  }
  const Lifted lifted = lift(out.basis_vectors, F);
  out.metric_value = problem.metric_expr.evaluate(lifted.F, lifted.G);
  out.init_value = problem.init_expr.evaluate(lifted.F, lifted.G);
  return out;
}

Lifted lift(const Eigen::MatrixXd& basis_vectors, const Eigen::VectorXd& F) {
  return {F, basis_vectors.transpose() * basis_vectors};
}

}  // namespace pepcert

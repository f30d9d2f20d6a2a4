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

#include "pepcert/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "pepcert/format.hpp"

namespace pepcert {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using CoefMatrix = std::vector<std::vector<Coef>>;

Coef Certificate::multiplier(const PepProblem& problem, int k) const {
  const ConstraintAtom& atom = problem.atoms.at(k);
  if (atom.tag == AtomTag::Initialization) return tau;
  auto it = multipliers.find(atom.id);
  return it == multipliers.end() ? Coef() : it->second;
}

VectorXd Certificate::aligned(const PepProblem& problem) const {
  VectorXd out(problem.atom_count());
  for (int k = 0; k < problem.atom_count(); ++k) out[k] = multiplier(problem, k).to_double();
  return out;
}

std::optional<mpq_class> rationalize(double x, double tol, long max_denominator) {
  if (!std::isfinite(x)) return std::nullopt;
  // Convergents h/k of the continued fraction of x.
  mpz_class h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(r);
    if (std::abs(a_d) > 1e15) return std::nullopt;
    const mpz_class a = static_cast<long>(a_d);
    const mpz_class h = a * h_prev + h_prev2;
    const mpz_class k = a * k_prev + k_prev2;
    if (k > max_denominator) return std::nullopt;
    mpq_class q(h, k);
    q.canonicalize();
    if (std::abs(q.get_d() - x) <= tol) return q;
    const double frac = r - a_d;
    if (frac == 0.0) return std::nullopt;
    r = 1.0 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

std::optional<bool> exact_psd(const CoefMatrix& S) {
  const std::size_t n = S.size();
  std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (S[i].size() != n) throw std::invalid_argument("matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (!S[i][j].is_exact()) return std::nullopt;
      A[i][j] = S[i][j].rational();
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const mpq_class pivot = A[k][k];
    if (pivot < 0) return false;
    if (pivot == 0) {
      for (std::size_t j = k + 1; j < n; ++j) {
        if (A[k][j] != 0) return false;
      }
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (A[i][k] == 0) continue;
      const mpq_class f = A[i][k] / pivot;
      for (std::size_t j = k + 1; j < n; ++j) A[i][j] -= f * A[k][j];
    }
  }
  return true;
}

namespace {

bool atom_exact(const ScalarExpr& e) {
  if (!e.c().is_exact()) return false;
  for (const auto& [k, w] : e.v_terms()) {
    if (!w.is_exact()) return false;
  }
  for (const auto& [ij, w] : e.m_terms()) {
    if (!w.is_exact()) return false;
  }
  return true;
}

bool problem_exact(const PepProblem& p) {
  if (!atom_exact(p.objective)) return false;
  return std::all_of(p.atoms.begin(), p.atoms.end(), [](const ConstraintAtom& a) { return atom_exact(a.expr); });
}

// v_P - sum lambda_k v_k and S = sum lambda_k M_k - M_P in Coef arithmetic.
struct CoefDual {
  std::vector<Coef> residual;
  CoefMatrix S;
};

CoefDual coef_dual(const PepProblem& p, const std::vector<Coef>& lam) {
  CoefDual d;
  d.residual = p.objective.exact_v(p.f_dim);
  d.S.assign(p.n(), std::vector<Coef>(p.n()));
  const auto add_m = [&](const ScalarExpr& e, const Coef& w) {
    for (const auto& [ij, m] : e.m_terms()) {
      const Coef t = w * m;
      d.S[ij.first][ij.second] += t;
      if (ij.first != ij.second) d.S[ij.second][ij.first] += t;
    }
  };
  add_m(p.objective, Coef(-1));
  for (int k = 0; k < p.atom_count(); ++k) {
    if (lam[k].is_zero()) continue;
    for (const auto& [f, v] : p.atoms[k].expr.v_terms()) d.residual[f] -= lam[k] * v;
    add_m(p.atoms[k].expr, lam[k]);
  }
  return d;
}

bool exact_dual_check(const PepProblem& p, const std::vector<Coef>& lam) {
  for (int k = 0; k < p.atom_count(); ++k) {
    if (!lam[k].is_exact()) return false;
    if (p.atoms[k].sense == Sense::LessEqual && lam[k] < Coef(0)) return false;
  }
  const CoefDual d = coef_dual(p, lam);
  for (const auto& r : d.residual) {
    if (!r.is_exact() || !r.is_zero()) return false;
  }
  return exact_psd(d.S).value_or(false);
}

std::vector<Coef> lambda_vector(const Certificate& cert, const PepProblem& p) {
  std::vector<Coef> lam(p.atom_count());
  for (int k = 0; k < p.atom_count(); ++k) lam[k] = cert.multiplier(p, k);
  return lam;
}

Certificate make_certificate(const PepProblem& p, const std::vector<Coef>& lam, const ToleranceRecord& tol,
                             const std::string& fp) {
  Certificate c;
  c.fingerprint = fp;
  c.tolerances = tol;
  for (int k = 0; k < p.atom_count(); ++k) {
    if (p.atoms[k].tag == AtomTag::Initialization) {
      c.tau = lam[k];
    } else {
      c.multipliers[p.atoms[k].id] = lam[k];
    }
  }
  return c;
}

// Rounds every nonzero entry to the smallest-denominator rational within its
// relative tolerance (one for inequality rows, one for equalities); nullopt if
// one has none.
std::optional<std::vector<Coef>> round_rational(const PepProblem& p, const VectorXd& lam,
                                                const std::vector<bool>& support, double delta_ineq,
                                                double delta_eq, long max_den) {
  std::vector<Coef> out(lam.size());
  for (int k = 0; k < lam.size(); ++k) {
    if (!support[k]) continue;
    const double delta = p.atoms[k].sense == Sense::Equal ? delta_eq : delta_ineq;
    auto q = rationalize(lam[k], delta * std::max(1.0, std::abs(lam[k])), max_den);
    if (!q) return std::nullopt;
    out[k] = Coef::exact(*q);
  }
  return out;
}

}  // namespace

Certificate extract(const PrimalDualSolution& solution, const PepProblem& problem, const ExtractOptions& options) {
  if (!solution.converged()) {
    throw CertificateError("cannot extract a certificate from a " + to_string(solution.status) + " solve" +
                           (solution.message.empty() ? "" : " (" + solution.message + ")"));
  }
  if (solution.multipliers.size() != problem.atom_count()) {
    throw CertificateError("solution does not match the problem's atoms");
  }
  const ToleranceRecord& tol = options.tolerances;
  const std::string fp = fingerprint(problem);
  const VectorXd& raw = solution.multipliers;
  const double biggest = raw.size() ? raw.cwiseAbs().maxCoeff() : 0.0;
  const double cutoff = tol.zero_threshold * biggest;

  std::vector<Coef> pruned(problem.atom_count());
  std::vector<Coef> unpruned(problem.atom_count());
  for (int k = 0; k < problem.atom_count(); ++k) {
    unpruned[k] = Coef::real(raw[k]);
    pruned[k] = std::abs(raw[k]) < cutoff ? Coef() : Coef::real(raw[k]);
  }

  if (options.rationalize && problem_exact(problem)) {
    const auto accept = [&](const std::vector<Coef>& lam) {
      Certificate c = make_certificate(problem, lam, tol, fp);
      c.exact = true;
      c.verdict = verify(c, problem, tol.verify).verdict();
      return c;
    };
    std::vector<bool> support(problem.atom_count());
    for (int k = 0; k < problem.atom_count(); ++k) support[k] = !pruned[k].is_zero();
    for (double delta : {1e-5, 1e-6, 1e-7, 1e-8}) {
      const auto lam = round_rational(problem, raw, support, delta, delta, tol.rational_max_denominator);
      if (lam && exact_dual_check(problem, *lam)) return accept(*lam);
    }
    // Degenerate faces leave inactive multipliers well above the zero
    // threshold and slow down the active ones. Dropping the inactive atoms
    // keeps the optimum; the smaller problem solves to full accuracy.
    for (double rel : {1e-6, 1e-5, 1e-4, 1e-3}) {
      PepProblem sub = problem;
      sub.atoms.clear();
      std::vector<int> kept;
      for (int k = 0; k < problem.atom_count(); ++k) {
        if (problem.atoms[k].tag == AtomTag::Initialization || std::abs(raw[k]) >= rel * biggest) {
          sub.atoms.push_back(problem.atoms[k]);
          kept.push_back(k);
        }
      }
      if (sub.atom_count() == problem.atom_count()) continue;
      const PrimalDualSolution s = solve(sub, std::max(1e-2 * tol.solver, 1e-11), 200);
      if (!s.converged()) continue;
      VectorXd lam_full = VectorXd::Zero(problem.atom_count());
      std::fill(support.begin(), support.end(), false);
      for (std::size_t j = 0; j < kept.size(); ++j) {
        lam_full[kept[j]] = s.multipliers[static_cast<int>(j)];
        support[kept[j]] = true;
      }
      // Inequality multipliers come out far more accurate than equality ones.
      for (double di : {1e-12, 1e-11, 1e-10, 1e-9}) {
        for (double de : {1e-9, 1e-8, 1e-7, 1e-6, 1e-5}) {
          const auto lam = round_rational(problem, lam_full, support, di, de, tol.rational_max_denominator);
          if (lam && exact_dual_check(problem, *lam)) return accept(*lam);
        }
      }
    }
  }

  Certificate c = make_certificate(problem, pruned, tol, fp);
  VerificationReport rep = verify(c, problem, tol.verify);
  if (!rep.pass) {
    Certificate full = make_certificate(problem, unpruned, tol, fp);
    VerificationReport full_rep = verify(full, problem, tol.verify);
    if (full_rep.pass) {
      c = std::move(full);
      rep = std::move(full_rep);
    }
  }
  c.verdict = rep.verdict();
  return c;
}

VerificationReport verify(const Certificate& cert, const PepProblem& problem, double eps) {
  const std::string fp = fingerprint(problem);
  if (cert.fingerprint != fp) {
    throw FingerprintMismatch("certificate fingerprint " + cert.fingerprint + " does not match problem " + fp);
  }
  VerificationReport rep;
  std::set<std::string> known;
  for (const auto& a : problem.atoms) {
    if (a.tag == AtomTag::Initialization) continue;
    known.insert(a.id);
    if (!cert.multipliers.contains(a.id)) rep.missing.push_back(a.id);
  }
  for (const auto& [id, w] : cert.multipliers) {
    if (!known.contains(id)) rep.unknown.push_back(id);
  }

  const int f_dim = problem.f_dim;
  const int n = problem.n();
  VectorXd dual_v = problem.objective.dense_v(f_dim);
  MatrixXd S = -problem.objective.dense_m(n);
  for (int k = 0; k < problem.atom_count(); ++k) {
    const ConstraintAtom& a = problem.atoms[k];
    const double lam = cert.multiplier(problem, k).to_double();
    if (a.sense == Sense::LessEqual && lam < -eps) rep.sign_violations.push_back(a.id);
    if (lam == 0.0) continue;
    dual_v -= lam * a.expr.dense_v(f_dim);
    S += lam * a.expr.dense_m(n);
  }
  rep.vector_residual = dual_v.size() ? dual_v.cwiseAbs().maxCoeff() : 0.0;
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(S, Eigen::EigenvaluesOnly);
    rep.min_eig_slack = es.eigenvalues()[0];
  }
  rep.pass = rep.missing.empty() && rep.unknown.empty() && rep.sign_violations.empty() &&
             rep.vector_residual <= eps && rep.min_eig_slack >= -eps;

  const std::vector<Coef> lam = lambda_vector(cert, problem);
  const bool all_exact =
      problem_exact(problem) && std::all_of(lam.begin(), lam.end(), [](const Coef& c) { return c.is_exact(); });
  if (all_exact) {
    rep.exact_pass = exact_dual_check(problem, lam);
    if (cert.exact && !*rep.exact_pass) rep.pass = false;
  } else if (cert.exact) {
    rep.pass = false;
  }
  return rep;
}

namespace {

// LDL^T with diagonal pivoting; returns the nonzero (d_k, row_k) pairs.
std::vector<std::pair<Coef, std::vector<Coef>>> ldl(CoefMatrix A, double zero_tol) {
  const std::size_t n = A.size();
  std::vector<std::pair<Coef, std::vector<Coef>>> out;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (p == n || A[i][i] > A[p][p]) p = i;
    }
    if (p == n) break;
    const Coef pivot = A[p][p];
    if (pivot.is_exact() ? !(pivot > Coef(0)) : pivot.to_double() <= zero_tol) break;
    done[p] = true;
    std::vector<Coef> l(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] || i == p) l[i] = A[i][p] / pivot;
    }
    l[p] = Coef(1);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j]) continue;
        A[i][j] -= l[i] * pivot * l[j];
      }
    }
    out.emplace_back(pivot, std::move(l));
  }
  return out;
}

}  // namespace

ProofChain::Values ProofChain::evaluate(const VectorXd& F, const MatrixXd& G) const {
  return {lhs.evaluate(F, G), combination.evaluate(F, G), slack.evaluate(F, G)};
}

ProofChain proof_chain(const Certificate& cert, const PepProblem& problem) {
  ProofChain chain;
  chain.lhs = problem.metric_expr - problem.init_expr * cert.tau;
  std::vector<int> order;
  for (int k = 0; k < problem.atom_count(); ++k) {
    if (problem.atoms[k].tag == AtomTag::Initialization) continue;
    if (cert.multiplier(problem, k).is_zero()) continue;
    order.push_back(k);
  }
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return problem.atoms[a].id < problem.atoms[b].id; });
  for (int k : order) {
    const Coef lam = cert.multiplier(problem, k);
    chain.terms.emplace_back(lam, k);
    chain.combination += problem.atoms[k].expr * lam;
  }
  const CoefDual d = coef_dual(problem, lambda_vector(cert, problem));
  for (int i = 0; i < problem.n(); ++i) {
    for (int j = i; j < problem.n(); ++j) chain.slack.add_m(i, j, d.S[i][j]);
  }
  double scale = 0.0;
  for (const auto& row : d.S) {
    for (const auto& c : row) scale = std::max(scale, std::abs(c.to_double()));
  }
  for (auto& [dk, l] : ldl(d.S, 1e-12 * std::max(scale, 1.0))) {
    VectorExpr v;
    for (int i = 0; i < problem.n(); ++i) {
      if (!l[i].is_zero()) v += VectorExpr::unit(problem.basis.label(i), l[i]);
    }
    chain.squares.emplace_back(dk, std::move(v));
  }
  return chain;
}

std::string render_proof(const Certificate& cert, const PepProblem& problem) {
  const VerificationReport rep = verify(cert, problem, cert.tolerances.verify);
  if (!rep.pass) throw CertificateError("certificate does not verify; refusing to render a proof");
  const ProofChain chain = proof_chain(cert, problem);
  const std::string metric = problem.metric_notation;
  const std::string init = problem.init_notation;
  const std::string tau = display(cert.tau);

  std::ostringstream os;
  os << "# Convergence proof\n\n";
  os << "Problem fingerprint: `" << cert.fingerprint << "`\n\n";
  os << "**Claim.** For every f in " << problem.cls.describe() << " and every run of `" << problem.method.name
     << "` with T = " << problem.method.T << ",\n\n";
  os << "    " << metric << " ≤ " << tau << "·(" << init << ")\n\n";
  os << "so " << init << " ≤ " << display(problem.init.R * problem.init.R) << " gives " << metric << " ≤ "
     << display(cert.tau * problem.init.R * problem.init.R) << ".\n\n";

  os << "**Constraints.** Each holds for every admissible trajectory.\n\n";
  if (chain.terms.empty()) {
    os << "None are needed.\n\n";
  } else {
    os << "| multiplier | id | constraint |\n|---|---|---|\n";
    for (const auto& [lam, k] : chain.terms) {
      const ConstraintAtom& a = problem.atoms[k];
      os << "| " << display(lam) << " | " << a.id << " | " << a.notation
         << (a.sense == Sense::Equal ? " = 0" : " ≤ 0") << " |\n";
    }
    os << "\n";
  }

  os << "**Chain.**\n\n```\n";
  os << metric << " − " << tau << "·(" << init << ")\n";
  os << "  = ";
  if (chain.terms.empty()) {
    os << "0";
  } else {
    bool first = true;
    for (const auto& [lam, k] : chain.terms) {
      os << signed_term(lam, "[" + problem.atoms[k].id + "]", first);
      first = false;
    }
  }
  os << " − S\n";
  os << "  ≤ ";
  if (chain.terms.empty()) {
    os << "0\n";
  } else {
    bool first = true;
    for (const auto& [lam, k] : chain.terms) {
      os << signed_term(lam, "[" + problem.atoms[k].id + "]", first);
      first = false;
    }
    os << "\n  ≤ 0\n";
  }
  os << "```\n\n";

  os << "where [id] denotes the left-hand side of the constraint with that id and\n\n";
  os << "    S = ";
  if (chain.squares.empty()) {
    os << "0";
  } else {
    bool first = true;
    for (const auto& [dk, v] : chain.squares) {
      os << signed_term(dk, "‖" + render(v, problem.basis) + "‖²", first);
      first = false;
    }
  }
  os << " ≥ 0.\n\n";
  os << "Verification: vector residual " << display(rep.vector_residual) << ", smallest slack eigenvalue "
     << display(rep.min_eig_slack);
  if (rep.exact_pass) os << (*rep.exact_pass ? ", checked in exact arithmetic" : "");
  os << ".\n";
  return os.str();
}

UnusedReport unused_constraints(const Certificate& cert, double threshold) {
  UnusedReport rep;
  for (const auto& [id, lam] : cert.multipliers) {
    if (lam.is_zero() || std::abs(lam.to_double()) < threshold) rep.ids.push_back(id);
  }
  rep.note = rep.ids.empty()
                 ? "Every constraint carries a nonzero multiplier."
                 : "The guarantee only uses the remaining constraints, so it holds for every function class and "
                   "method whose trajectories satisfy them.";
  return rep;
}

namespace {

std::optional<int> own_gradient(const VectorExpr& e) {
  if (e.terms().size() != 1) return std::nullopt;
  const auto& [label, w] = *e.terms().begin();
  if (label.kind != BasisLabel::Kind::Gradient || !(w == Coef(1))) return std::nullopt;
  return label.index;
}

}  // namespace

std::vector<GroupedConstraint> group_algorithm_constraints(const Certificate& cert, const PepProblem& problem) {
  std::map<int, GroupedConstraint> groups;
  for (int q = 0; q < problem.method.query_count(); ++q) {
    if (!problem.method.queries[q].free) continue;
    groups[q].query = q;
    groups[q].display = problem.method.queries[q].display;
  }
  for (int k = 0; k < problem.atom_count(); ++k) {
    const ConstraintAtom& a = problem.atoms[k];
    if (a.tag != AtomTag::Algorithm) continue;
    if (!a.relation) throw CertificateError("algorithm atom " + a.id + " carries no inner-product relation");
    VectorExpr other;
    std::optional<int> q = own_gradient(a.relation->left);
    if (q && groups.contains(*q)) {
      other = a.relation->right;
    } else {
      q = own_gradient(a.relation->right);
      if (!q || !groups.contains(*q)) {
        throw CertificateError("algorithm atom " + a.id + " is not of the form <g_t, w> at a free point x_t");
      }
      other = a.relation->left;
    }
    const Coef lam = cert.multiplier(problem, k);
    if (lam.is_zero()) continue;
    groups[*q].w += other * lam;
    groups[*q].atoms.push_back(a.id);
  }
  std::vector<GroupedConstraint> out;
  for (auto& [q, g] : groups) out.push_back(std::move(g));
  return out;
}

CoefficientTable recover_explicit_method(const std::vector<GroupedConstraint>& grouped, const MethodSpec& method) {
  std::map<int, VectorExpr> solved;
  const auto substitute_solved = [&](VectorExpr e) {
    for (const auto& [q, x] : solved) e = e.substitute(BasisLabel::free_point(q), x);
    return e;
  };
  for (const auto& g : grouped) {
    const BasisLabel xt = BasisLabel::free_point(g.query);
    const VectorExpr w = substitute_solved(g.w);
    const Coef c = w.coefficient(xt);
    double scale = 0.0;
    for (const auto& [label, v] : w.terms()) scale = std::max(scale, std::abs(v.to_double()));
    if (c.is_zero() || std::abs(c.to_double()) <= 1e-9 * scale) {
      throw CertificateError("weight of " + g.display + " in the combined constraint vanishes; " + g.display +
                             " cannot be solved for");
    }
    VectorExpr x = (w - VectorExpr::unit(xt, c)) * (Coef(-1) / c);
    for (const auto& [label, v] : x.terms()) {
      if (label.kind == BasisLabel::Kind::Free ||
          (label.kind == BasisLabel::Kind::Gradient && label.index >= g.query) ||
          label.kind == BasisLabel::Kind::Optimizer) {
        throw CertificateError("solving for " + g.display + " leaves a dependence on " + to_string(label));
      }
    }
    solved[g.query] = std::move(x);
  }

  CoefficientTable table;
  table.name = method.name + "-recovered";
  table.iterates = method.iterates;
  for (int q = 0; q < method.query_count(); ++q) {
    const QueryEvent& ev = method.queries[q];
    table.tags.push_back(ev.tag);
    table.displays.push_back(ev.display);
    table.iterations.push_back(ev.iteration);
    if (q == 0) continue;
    VectorExpr pos;
    if (ev.free) {
      auto it = solved.find(q);
      if (it == solved.end()) throw CertificateError("no combined constraint for " + ev.display);
      pos = it->second;
    } else {
      pos = substitute_solved(ev.position);
    }
    const Coef x0 = pos.coefficient(BasisLabel::initial());
    if (std::abs(x0.to_double() - 1.0) > 1e-6) {
      throw CertificateError("recovered " + ev.display + " is not of the form x0 − Σγg (weight of x_0 is " +
                             display(x0) + ")");
    }
    std::vector<Coef> row(q);
    for (const auto& [label, v] : pos.terms()) {
      if (label.kind == BasisLabel::Kind::Gradient) row.at(label.index) = -v;
    }
    while (!row.empty() && row.back().is_zero()) row.pop_back();
    table.gamma.push_back(std::move(row));
  }
  return table;
}

std::string to_string(AtomObservability kind) {
  switch (kind) {
    case AtomObservability::ParameterFree:
      return "parameter-free";
    case AtomObservability::Observable:
      return "parameter-dependent-and-observable";
    case AtomObservability::Unobservable:
      return "parameter-dependent-and-unobservable";
  }
  return "?";
}

BacktrackingReport backtracking_report(const Certificate& cert, const PepProblem& problem) {
  BacktrackingReport rep;
  for (int k = 0; k < problem.atom_count(); ++k) {
    const ConstraintAtom& a = problem.atoms[k];
    if (a.tag == AtomTag::Initialization || cert.multiplier(problem, k).is_zero()) continue;
    AtomObservability kind = AtomObservability::ParameterFree;
    if (a.parameter_dependent) {
      const bool star = std::find(a.points.begin(), a.points.end(), 0) != a.points.end();
      kind = star ? AtomObservability::Unobservable : AtomObservability::Observable;
    }
    if (kind == AtomObservability::Unobservable) rep.compatible = false;
    rep.used.emplace_back(a.id, kind);
  }
  std::sort(rep.used.begin(), rep.used.end());
  return rep;
}

namespace {

nlohmann::json coef_json(const Coef& c) {
  if (c.is_exact()) return c.str();
  return c.to_double();
}

Coef coef_from_json(const nlohmann::json& j, const std::string& path) {
  if (j.is_number()) return Coef::real(j.get<double>());
  if (j.is_string()) {
    try {
      return Coef::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw CertificateFormatError(path, e.what());
    }
  }
  throw CertificateFormatError(path, "expected a number or a \"p/q\" string");
}

}  // namespace

nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json doc;
  doc["version"] = cert.version;
  doc["fingerprint"] = cert.fingerprint;
  doc["tau"] = coef_json(cert.tau);
  nlohmann::json mult = nlohmann::json::object();
  for (const auto& [id, lam] : cert.multipliers) mult[id] = coef_json(lam);
  doc["multipliers"] = std::move(mult);
  doc["tolerances"] = {{"solver", cert.tolerances.solver},
                       {"zero_threshold", cert.tolerances.zero_threshold},
                       {"verify", cert.tolerances.verify},
                       {"rational_max_denominator", cert.tolerances.rational_max_denominator}};
  doc["exact"] = cert.exact;
  doc["verdict"] = cert.verdict;
  if (!cert.lyapunov.empty()) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : cert.lyapunov) steps.push_back({{"step", s.step}, {"atoms", s.atoms}});
    doc["lyapunov"] = std::move(steps);
  }
  return doc;
}

Certificate certificate_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw CertificateFormatError("$", "certificate must be a JSON object");
  static const std::set<std::string> allowed{"version", "fingerprint", "tau",   "multipliers",
                                             "tolerances", "exact",     "verdict", "lyapunov"};
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.contains(key)) throw CertificateFormatError("$." + key, "unknown field");
  }
  for (const char* key : {"version", "fingerprint", "tau", "multipliers"}) {
    if (!doc.contains(key)) throw CertificateFormatError(std::string("$.") + key, "missing field");
  }
  Certificate c;
  if (!doc["version"].is_number_integer()) throw CertificateFormatError("$.version", "expected an integer");
  c.version = doc["version"].get<int>();
  if (c.version != 1) throw CertificateFormatError("$.version", "unsupported version");
  if (!doc["fingerprint"].is_string()) throw CertificateFormatError("$.fingerprint", "expected a string");
  c.fingerprint = doc["fingerprint"].get<std::string>();
  c.tau = coef_from_json(doc["tau"], "$.tau");
  if (!doc["multipliers"].is_object()) throw CertificateFormatError("$.multipliers", "expected an object");
  for (const auto& [id, value] : doc["multipliers"].items()) {
    c.multipliers[id] = coef_from_json(value, "$.multipliers." + id);
  }
  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (!t.is_object()) throw CertificateFormatError("$.tolerances", "expected an object");
    for (const auto& [key, value] : t.items()) {
      const std::string path = "$.tolerances." + key;
      if (!value.is_number()) throw CertificateFormatError(path, "expected a number");
      if (key == "solver") {
        c.tolerances.solver = value.get<double>();
      } else if (key == "zero_threshold") {
        c.tolerances.zero_threshold = value.get<double>();
      } else if (key == "verify") {
        c.tolerances.verify = value.get<double>();
      } else if (key == "rational_max_denominator") {
        c.tolerances.rational_max_denominator = value.get<long>();
      } else {
        throw CertificateFormatError(path, "unknown field");
      }
    }
  }
  if (doc.contains("exact")) {
    if (!doc["exact"].is_boolean()) throw CertificateFormatError("$.exact", "expected a boolean");
    c.exact = doc["exact"].get<bool>();
  }
  if (doc.contains("verdict")) {
    if (!doc["verdict"].is_string()) throw CertificateFormatError("$.verdict", "expected a string");
    c.verdict = doc["verdict"].get<std::string>();
  }
  if (doc.contains("lyapunov")) {
    const auto& steps = doc["lyapunov"];
    if (!steps.is_array()) throw CertificateFormatError("$.lyapunov", "expected an array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const std::string path = "$.lyapunov[" + std::to_string(i) + "]";
      const auto& s = steps[i];
      if (!s.is_object() || !s.contains("step") || !s.contains("atoms") || !s["step"].is_number_integer() ||
          !s["atoms"].is_array()) {
        throw CertificateFormatError(path, "expected {step, atoms}");
      }
      PotentialStepRecord rec;
      rec.step = s["step"].get<int>();
      for (const auto& id : s["atoms"]) {
        if (!id.is_string()) throw CertificateFormatError(path + ".atoms", "expected strings");
        rec.atoms.push_back(id.get<std::string>());
      }
      c.lyapunov.push_back(std::move(rec));
    }
  }
  return c;
}

}  // namespace pepcert

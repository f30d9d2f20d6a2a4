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

#include "pepcert/lyapunov.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "pepcert/method.hpp"

namespace pepcert {

namespace {

// First query ordinal of every point; -1 for the optimizer.
std::vector<int> point_ordinals(const PepProblem& p) {
  std::vector<int> ord(p.points.size(), -1);
  for (int q = p.method.query_count() - 1; q >= 0; --q) ord.at(p.query_point.at(q)) = q;
  return ord;
}

int step_of(const std::vector<int>& ord, const ConstraintAtom& atom) {
  int step = 0;
  for (int i : atom.points) step = std::max(step, ord.at(i));
  return step;
}

int point_by_tag(const PepProblem& p, const std::string& tag) {
  auto i = p.points.find_tag(tag);
  if (!i) throw LyapunovError("problem has no point tagged " + tag);
  return *i;
}

std::string nag_y_tag(int s) { return "y" + std::to_string(s); }

}  // namespace

int query_step(const PepProblem& problem, const ConstraintAtom& atom) {
  return step_of(point_ordinals(problem), atom);
}

PotentialSequence build_potentials(const PepProblem& problem, const Certificate& cert) {
  if (cert.tau.is_zero()) throw LyapunovError("certificate has tau = 0");
  const int T = problem.method.T;
  const std::vector<int> ord = point_ordinals(problem);

  PotentialSequence out;
  out.scale = Coef(1) / cert.tau;
  out.steps.assign(T + 1, {});
  for (int k = 0; k < problem.atom_count(); ++k) {
    const ConstraintAtom& a = problem.atoms[k];
    if (a.tag == AtomTag::Initialization) continue;
    if (!cert.multipliers.contains(a.id)) throw LyapunovError("certificate has no multiplier for " + a.id);
    const Coef w = cert.multipliers.at(a.id) * out.scale;
    if (w.is_zero()) continue;
    const int s = step_of(ord, a);
    int t = 1;
    while (t < T && problem.method.iterates.at(t) < s) ++t;
    out.steps[t].emplace_back(k, w);
  }
  out.V.push_back(problem.init_expr);
  for (int t = 1; t <= T; ++t) {
    ScalarExpr v = out.V.back();
    for (const auto& [k, w] : out.steps[t]) v += w * problem.atoms[k].expr;
    out.V.push_back(std::move(v));
  }
  return out;
}

namespace {

// Exact coefficients must cancel exactly; floating ones up to rounding
// relative to the largest coefficient involved.
bool same(const ScalarExpr& a, const ScalarExpr& b) {
  double scale = 1.0;
  for (const ScalarExpr* e : {&a, &b}) {
    for (const auto& [k, w] : e->v_terms()) scale = std::max(scale, std::abs(w.to_double()));
    for (const auto& [ij, w] : e->m_terms()) scale = std::max(scale, std::abs(w.to_double()));
  }
  const auto zero = [&](const Coef& w) { return w.is_exact() ? w.is_zero() : std::abs(w.to_double()) <= 1e-12 * scale; };
  const ScalarExpr d = a - b;
  if (!zero(d.c())) return false;
  for (const auto& [k, w] : d.v_terms()) {
    if (!zero(w)) return false;
  }
  for (const auto& [ij, w] : d.m_terms()) {
    if (!zero(w)) return false;
  }
  return true;
}

}  // namespace

bool telescopes(const PotentialSequence& potentials) {
  if (potentials.V.empty()) return true;
  ScalarExpr acc = potentials.V.front();
  for (std::size_t t = 0; t + 1 < potentials.V.size(); ++t) acc += potentials.V[t + 1] - potentials.V[t];
  return same(acc, potentials.V.back());
}

DecreaseCheck verify_decrease(const PotentialSequence& potentials, const PepProblem& problem, int t, double tol,
                              const SolverOptions& options) {
  if (t < 0 || t >= potentials.T()) {
    throw LyapunovError(fmt::format("decrease step t = {} outside [0, {})", t, potentials.T()));
  }
  DecreaseCheck out;
  out.t = t;
  ScalarExpr diff = potentials.V[t + 1] - potentials.V[t];
  const double offset = diff.c().to_double();
  diff.add_c(-diff.c());
  if (diff.v_terms().empty() && diff.m_terms().empty()) {
    out.max_increase = offset;
    out.certified = offset <= tol;
    return out;
  }

  PepProblem sub = problem;
  sub.atoms.clear();
  const std::vector<int> ord = point_ordinals(problem);
  const int horizon = problem.method.iterates.at(t + 1);
  for (const ConstraintAtom& a : problem.atoms) {
    if (a.tag == AtomTag::Initialization) continue;
    if (step_of(ord, a) <= horizon) sub.atoms.push_back(a);
  }
  ConstraintAtom norm;
  norm.id = "NORM";
  norm.tag = AtomTag::Initialization;
  for (int i = 0; i < problem.n(); ++i) norm.expr.add_m(i, i, Coef(1));
  norm.expr.add_c(Coef(-1));
  norm.notation = "Tr(G) ≤ 1";
  sub.atoms.push_back(std::move(norm));
  sub.objective = diff;

  const PrimalDualSolution sol = solve(sub, InteriorPointSolver{}, options);
  out.status = sol.status;
  if (sol.status == SolveStatus::Unbounded) {
    out.max_increase = std::numeric_limits<double>::infinity();
    out.message = "one-step problem is unbounded: the potential can increase";
    return out;
  }
  if (!sol.converged()) {
    out.max_increase = std::numeric_limits<double>::quiet_NaN();
    out.message = "one-step solve ended with " + to_string(sol.status) +
                  (sol.message.empty() ? "" : ": " + sol.message);
    return out;
  }
  // The dual objective bounds the increase from above.
  out.max_increase = std::max(sol.diagnostics.primal_objective, sol.diagnostics.dual_objective) + offset;
  out.certified = out.max_increase <= tol;
  return out;
}

std::vector<PotentialStepRecord> potential_records(const PotentialSequence& potentials, const PepProblem& problem) {
  std::vector<PotentialStepRecord> out;
  for (int t = 1; t <= potentials.T(); ++t) {
    PotentialStepRecord r;
    r.step = t;
    for (const auto& [k, w] : potentials.steps[t]) r.atoms.push_back(problem.atoms[k].id);
    out.push_back(std::move(r));
  }
  return out;
}

std::string render_potentials(const PotentialSequence& potentials, const PepProblem& problem,
                              const std::vector<DecreaseCheck>& checks) {
  std::ostringstream os;
  os << "# Potential sequence\n\n";
  os << "Weights are multipliers divided by τ = " << (Coef(1) / potentials.scale).str() << ".\n\n";
  os << "V_0 = " << render(potentials.V[0], problem.basis, problem.f_names) << "\n\n";
  for (int t = 1; t <= potentials.T(); ++t) {
    os << "## V_" << t << "\n\nV_" << t << " = V_" << t - 1;
    for (const auto& [k, w] : potentials.steps[t]) os << " + " << w.str() << "·[" << problem.atoms[k].id << "]";
    os << "\n\n    " << render(potentials.V[t], problem.basis, problem.f_names) << "\n\n";
  }
  if (!checks.empty()) {
    os << "## One-step decrease\n\n| t | max V_{t+1} − V_t | status | verdict |\n|---|---|---|---|\n";
    for (const DecreaseCheck& c : checks) {
      os << "| " << c.t << " | " << fmt::format("{:.3e}", c.max_increase) << " | " << to_string(c.status) << " | "
         << (c.certified ? "PASS" : "FAIL") << " |\n";
    }
    for (const DecreaseCheck& c : checks) {
      if (!c.message.empty()) os << "\n- t = " << c.t << ": " << c.message;
    }
    os << "\n";
  }
  os << "\nTelescoping identity: " << (telescopes(potentials) ? "holds" : "FAILS") << "\n";
  return os.str();
}

namespace {

void require_classical_nag(const PepProblem& p) {
  if (p.method.name != "nag") throw LyapunovError("not a NAG problem");
  if (!p.cls.smooth() || !p.cls.mu.is_zero()) throw LyapunovError("the NAG reference proof needs mu = 0 and finite L");
  if (p.metric.kind != PerformanceMetric::Kind::FunctionValueGap || !p.metric.at.empty()) {
    throw LyapunovError("the NAG reference proof bounds f(x_T) - f*");
  }
  if (p.init.kind != InitialCondition::Kind::DistanceSquared) {
    throw LyapunovError("the NAG reference proof starts from ||x0 - x*||^2");
  }
}

}  // namespace

Certificate nag_classical_certificate(const PepProblem& problem) {
  require_classical_nag(problem);
  const int T = problem.method.T;
  const std::vector<Coef> lam = nag_lambdas(T);
  const Coef last = lam[T] * lam[T];
  const Coef& L = *problem.cls.L;

  Certificate c;
  c.fingerprint = fingerprint(problem);
  c.tau = L / (Coef(2) * last);
  for (const ConstraintAtom& a : problem.atoms) {
    if (a.tag != AtomTag::Initialization) c.multipliers[a.id] = Coef();
  }
  auto put = [&](const std::string& i, const std::string& j, const Coef& w) {
    const std::string id = "IC(" + i + "," + j + ")";
    if (!c.multipliers.contains(id)) {
      // y_0 = x_0 and y_1 = x_1: the inequality between them vanishes.
      const auto& a = problem.points.at(point_by_tag(problem, i));
      const auto& b = problem.points.at(point_by_tag(problem, j));
      if (a.position == b.position) return;
      throw LyapunovError("missing atom " + id);
    }
    c.multipliers[id] += w / last;
  };
  for (int s = 0; s < T; ++s) {
    const std::string x = std::to_string(s), y = nag_y_tag(s), next = std::to_string(s + 1);
    put(x, y, lam[s] * lam[s]);
    put("*", y, lam[s + 1]);
    put(y, next, lam[s + 1] * lam[s + 1]);
  }
  c.verdict = verify(c, problem, c.tolerances.verify).verdict();
  return c;
}

ScalarExpr nag_reference_potential(const PepProblem& problem, int t, bool complete) {
  require_classical_nag(problem);
  const int T = problem.method.T;
  if (t < 0 || t > T) throw LyapunovError(fmt::format("potential index {} outside [0, {}]", t, T));
  const std::vector<Coef> lam = nag_lambdas(T);
  const Coef& L = *problem.cls.L;
  const InterpolationPoint& star = problem.points.at(0);
  const InterpolationPoint& xt = problem.points.at(problem.iterate_point(t));
  const InterpolationPoint& xprev = problem.points.at(problem.iterate_point(std::max(t - 1, 0)));

  ScalarExpr v = lam[t] * lam[t] * (fval(xt.f_index, problem.f_dim) - fval(star.f_index, problem.f_dim));
  const VectorExpr d = lam[t] * (xt.position - star.position) + (Coef(1) - lam[t]) * (xprev.position - star.position);
  v += L / Coef(2) * squared_norm(problem.basis, d);
  if (!complete) return v;

  const Coef w = Coef(1) / (Coef(2) * L);
  for (int s = 0; s < t; ++s) {
    const InterpolationPoint& xs = problem.points.at(point_by_tag(problem, std::to_string(s)));
    const InterpolationPoint& ys = problem.points.at(point_by_tag(problem, nag_y_tag(s)));
    const InterpolationPoint& xn = problem.points.at(point_by_tag(problem, std::to_string(s + 1)));
    v += w * lam[s + 1] * lam[s + 1] * squared_norm(problem.basis, xn.gradient_expr());
    v += w * lam[s + 1] * squared_norm(problem.basis, ys.gradient_expr());
    v += w * lam[s] * lam[s] * squared_norm(problem.basis, ys.gradient_expr() - xs.gradient_expr());
  }
  return v;
}

}  // namespace pepcert

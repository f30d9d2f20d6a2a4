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


// Acceptance checks. Each criterion prints one PASS/FAIL line; the exit
// status is nonzero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "pepcert/analyze.hpp"
#include "pepcert/certificate.hpp"
#include "pepcert/config.hpp"
#include "pepcert/lyapunov.hpp"
#include "pepcert/quadratic.hpp"
#include "pepcert/sdp.hpp"

namespace fs = std::filesystem;
using namespace pepcert;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail = what;
      ok = false;
    }
  }
};

std::vector<fs::path> corpus() {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(PEPCERT_CORPUS_DIR)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

// The line-search problem at T = 1 with f-gap metric and initialization.
PepProblem line_search(const Coef& mu, const Coef& L) {
  InitialCondition init;
  init.kind = InitialCondition::Kind::FunctionValueGap;
  return build(FunctionClassSpec::smooth_strongly_convex(mu, L), gdls(1), {}, init);
}

const std::vector<std::pair<Coef, Coef>>& golden_params() {
  static const std::vector<std::pair<Coef, Coef>> p{
      {Coef::ratio(1, 10), Coef(1)}, {Coef::ratio(1, 100), Coef(1)}, {Coef(1), Coef(10)}};
  return p;
}

Check rate() {
  Check o;
  std::string times;
  for (const auto& [mu, L] : golden_params()) {
    const auto start = std::chrono::steady_clock::now();
    const PepProblem p = line_search(mu, L);
    const PrimalDualSolution s = solve(p, 1e-9);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double r = ((L - mu) / (L + mu)).to_double();
    const double err = std::abs(s.diagnostics.primal_objective - r * r);
    o.require(s.converged(), "solver did not converge");
    o.require(err <= 1e-6, fmt::format("mu={} L={}: |objective - rate| = {:.2e}", mu.str(), L.str(), err));
    o.require(secs < 1.0, fmt::format("mu={} L={}: {:.3f} s", mu.str(), L.str(), secs));
    times += fmt::format(" {:.0f}ms", secs * 1e3);
  }
  if (o.ok) o.detail = "three parameter sets within 1e-6, times" + times;
  return o;
}

Check multipliers() {
  Check o;
  double worst = 0;
  for (const auto& [mu, L] : golden_params()) {
    const PepProblem p = line_search(mu, L);
    const Certificate c = extract(solve(p, 1e-9), p);
    const auto cf = oracle::gdls_closed_form(mu.to_double(), L.to_double());
    const std::vector<std::pair<std::string, double>> expect{
        {"IC(*,0)", cf.star0}, {"IC(*,1)", cf.star1}, {"IC(0,1)", cf.zero1}, {"ALG(1)", cf.alg1},
        {"ALG(2)", cf.alg2},   {"IC(0,*)", 0.0},      {"IC(1,*)", 0.0},      {"IC(1,0)", 0.0}};
    o.require(c.multipliers.size() == expect.size(), "unexpected multiplier set");
    for (const auto& [id, v] : expect) {
      const auto it = c.multipliers.find(id);
      if (it == c.multipliers.end()) {
        o.require(false, "missing " + id);
        continue;
      }
      const double err = std::abs(it->second.to_double() - v);
      worst = std::max(worst, err);
      o.require(err <= 1e-5, fmt::format("{} off by {:.2e}", id, err));
    }
    o.require(std::abs(c.tau.to_double() - cf.tau) <= 1e-5, "tau off");
  }
  if (o.ok) o.detail = fmt::format("largest deviation {:.1e}", worst);
  return o;
}

// The listed matrices, indexed on (x*, x0, g0, x1, g1) and (f*, f0, f1).
using Mat = std::vector<std::vector<Coef>>;

Mat zeros(int n) { return Mat(n, std::vector<Coef>(n)); }

Mat scaled(Mat m, const Coef& s) {
  for (auto& r : m)
    for (auto& x : r) x *= s;
  return m;
}

Check matrices() {
  Check o;
  int compared = 0;
  for (const auto& [mu, L] : golden_params()) {
    const PepProblem p = line_search(mu, L);
    const Coef k = mu / L;
    const Coef il = Coef(1) / L;
    const Coef z;
    const Coef w = Coef(1) / (Coef(2) * (Coef(1) - k));
    struct Golden {
      std::string id;
      std::vector<Coef> v;
      Mat M;
    };
    const Coef h = Coef::ratio(1, 2);
    std::vector<Golden> golden{
        {"IC(*,0)", {-1, 1, 0}, scaled({{mu, -mu, 1, z, z}, {-mu, mu, -1, z, z}, {1, -1, il, z, z}, {z, z, z, z, z},
                                        {z, z, z, z, z}}, w)},
        {"IC(*,1)", {-1, 0, 1}, scaled({{mu, z, z, -mu, 1}, {z, z, z, z, z}, {z, z, z, z, z}, {-mu, z, z, mu, -1},
                                        {1, z, z, -1, il}}, w)},
        {"IC(0,*)", {1, -1, 0}, scaled({{mu, -mu, k, z, z}, {-mu, mu, -k, z, z}, {k, -k, il, z, z}, {z, z, z, z, z},
                                        {z, z, z, z, z}}, w)},
        {"IC(0,1)", {0, -1, 1}, scaled({{z, z, z, z, z}, {z, mu, -k, -mu, 1}, {z, -k, il, k, -il},
                                        {z, -mu, k, mu, -1}, {z, 1, -il, -1, il}}, w)},
        {"IC(1,*)", {1, 0, -1}, scaled({{mu, z, z, -mu, k}, {z, z, z, z, z}, {z, z, z, z, z}, {-mu, z, z, mu, -k},
                                        {k, z, z, -k, il}}, w)},
        {"IC(1,0)", {0, 1, -1}, scaled({{z, z, z, z, z}, {z, mu, -1, -mu, k}, {z, -1, il, 1, -il},
                                        {z, -mu, 1, mu, -k}, {z, k, -il, -k, il}}, w)},
        {"ALG(1)", {0, 0, 0}, scaled({{z, z, z, z, z}, {z, z, z, z, z}, {z, z, z, z, 1}, {z, z, z, z, z},
                                      {z, z, 1, z, z}}, h)},
        {"ALG(2)", {0, 0, 0}, scaled({{z, z, z, z, z}, {z, z, z, z, -1}, {z, z, z, z, z}, {z, z, z, z, 1},
                                      {z, -1, z, 1, z}}, h)},
        {"INIT", {-1, 1, 0}, zeros(5)},
    };
    o.require(p.n() == 5 && p.f_dim == 3, "unexpected lifting dimensions");
    o.require(p.atom_count() == static_cast<int>(golden.size()), "unexpected atom count");
    if (!o.ok) return o;
    o.require(p.objective.exact_v(3) == std::vector<Coef>{-1, 0, 1}, "v_P differs");
    o.require(p.objective.exact_m(5) == zeros(5), "M_P differs");
    for (const auto& g : golden) {
      const int a = p.find_atom(g.id);
      if (a < 0) {
        o.require(false, "missing " + g.id);
        continue;
      }
      const ScalarExpr& e = p.atoms[a].expr;
      o.require(e.exact_v(3) == g.v, g.id + ": v differs");
      o.require(e.exact_m(5) == g.M, g.id + ": M differs");
      ++compared;
    }
  }
  if (o.ok) o.detail = fmt::format("{} (v, M) pairs plus v_P, M_P identical over three parameter sets", compared);
  return o;
}

double certified_tau(const AnalysisResult& r) {
  return r.certificate ? r.certificate->tau.to_double() : r.tau;
}

Check soundness() {
  Check o;
  std::mt19937_64 rng(2026);
  int trials = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& file : corpus()) {
    const ProblemConfig cfg = load_config(file.string());
    const AnalysisResult r = analyze(cfg);
    if (r.outcome != pepcert::Outcome::Pass) {
      o.require(false, file.stem().string() + ": analysis failed");
      continue;
    }
    const double tau = certified_tau(r);
    const oracle::Problem op = oracle::read_problem_file(file.string());
    const double L = std::isinf(op.L) ? 10.0 : op.L;
    for (int trial = 0; trial < 100; ++trial) {
      const int dim = 2 + trial % 9;
      const oracle::Quadratic q = oracle::random_quadratic(rng, dim, op.mu, L, trial % 4 == 0);
      const Eigen::VectorXd x0 = oracle::random_point(rng, dim);
      const oracle::Run run = oracle::simulate(op, q, x0);
      const double metric = oracle::metric_value(op, q, run);
      const double init = oracle::init_value(op, q, x0);
      worst = std::max(worst, metric / (tau * init));
      o.require(metric <= tau * init * (1 + 1e-9),
                fmt::format("{} trial {}: metric {:.12g} > tau*init {:.12g}", file.stem().string(), trial, metric,
                            tau * init));
      ++trials;
    }
  }
  if (o.ok) o.detail = fmt::format("{} trials, largest metric/(tau*init) = {:.9f}", trials, worst);
  return o;
}

Check tightness() {
  Check o;
  double gap = 0, viol = -1;
  int n = 0;
  for (const auto& file : corpus()) {
    const ProblemConfig cfg = load_config(file.string());
    const PepProblem p = cfg.build();
    const PrimalDualSolution s = solve(p, cfg.solver.tol, cfg.solver.max_iter);
    if (!s.converged()) {
      o.require(false, file.stem().string() + ": solve failed");
      continue;
    }
    const WorstCaseInstance w = reconstruct_worst_case(p, s.F, s.G, 1e-9);
    const double err = std::abs(w.metric_value - s.diagnostics.primal_objective);
    const MembershipResult m = membership_check(w.samples, p.cls, 1e-6);
    gap = std::max(gap, err);
    viol = std::max(viol, m.worst_violation);
    o.require(err <= 1e-5, fmt::format("{}: metric gap {:.2e}", file.stem().string(), err));
    o.require(m.member, fmt::format("{}: violation {:.2e}", file.stem().string(), m.worst_violation));
    ++n;
  }
  if (o.ok) o.detail = fmt::format("{} problems, metric gap <= {:.1e}, worst IC lhs {:.1e}", n, gap, viol);
  return o;
}

double resolve_explicit(const PepProblem& p, const CoefficientTable& t) {
  const PepProblem q = build(p.cls, explicit_method(t), p.metric, p.init);
  return solve(q, 1e-9).tau;
}

Check recovery() {
  Check o;
  for (const auto& [mu, L] : golden_params()) {
    const PepProblem p = line_search(mu, L);
    const PrimalDualSolution s = solve(p, 1e-9);
    const Certificate c = extract(s, p);
    const auto grouped = group_algorithm_constraints(c, p);
    if (grouped.size() != 1) {
      o.require(false, "expected one grouped constraint");
      continue;
    }
    const VectorExpr& w = grouped[0].w;
    const Coef lead = w.coefficient(BasisLabel::free_point(1));
    if (lead.is_zero()) {
      o.require(false, "w_1 has no x_1 term");
      continue;
    }
    const VectorExpr unit = w * (Coef(1) / lead);
    const VectorExpr expect = VectorExpr::unit(BasisLabel::free_point(1)) - VectorExpr::unit(BasisLabel::initial()) +
                              VectorExpr::unit(BasisLabel::gradient(0), Coef(2) / (L + mu));
    o.require(unit == expect, "w_1 is not proportional to x_1 - x_0 + 2/(L+mu) g_0");
    const CoefficientTable t = recover_explicit_method(grouped, p.method);
    o.require(t.rows() == 1 && t.at(1, 0) == Coef(2) / (L + mu), "recovered step is not 2/(L+mu)");
    o.require(std::abs(resolve_explicit(p, t) - s.tau) <= 1e-6, "recovered method rate differs");
  }
  const PepProblem g = build(FunctionClassSpec::smooth_strongly_convex(Coef(0), Coef(1)), gfom(2), {}, {});
  const PrimalDualSolution s = solve(g, 1e-9);
  const Certificate c = extract(s, g);
  const CoefficientTable t = recover_explicit_method(group_algorithm_constraints(c, g), g.method);
  const double tau = resolve_explicit(g, t);
  o.require(std::abs(tau - s.tau) <= 1e-6, fmt::format("GFOM round trip {:.9f} vs {:.9f}", tau, s.tau));
  if (o.ok) o.detail = fmt::format("GDLS step 2/(L+mu) on three parameter sets; GFOM T=2 tau {:.8f}", tau);
  return o;
}

Check lyapunov() {
  Check o;
  const int T = 5;
  const auto cls = FunctionClassSpec::smooth_strongly_convex(Coef(0), Coef(1));
  const PepProblem p = build(cls, nag(Coef(1), T), {}, {});
  const Certificate c = nag_classical_certificate(p);
  o.require(verify(c, p, 1e-9).pass, "classical certificate does not verify");
  const PotentialSequence seq = build_potentials(p, c);
  o.require(seq.V[0] == p.init_expr, "V_0 differs from the initialization");
  o.require(telescopes(seq), "potentials do not telescope");
  double worst = -1;
  for (int t = 0; t < T; ++t) {
    const DecreaseCheck d = verify_decrease(seq, p, t, 1e-8);
    worst = std::max(worst, d.max_increase);
    o.require(d.certified, fmt::format("step {}: increase {:.2e} {}", t, d.max_increase, d.message));
  }
  const std::vector<double> lam = oracle::nag_lambdas(T + 2);
  double coef_gap = 0;
  for (int t = 0; t <= T; ++t) {
    const ScalarExpr scaled = seq.V[t] * Coef::ratio(1, 2);
    const ScalarExpr diff = scaled - nag_reference_potential(p, t, true);
    for (const auto& [i, v] : diff.v_terms()) coef_gap = std::max(coef_gap, std::abs(v.to_double()));
    for (const auto& [i, v] : diff.m_terms()) coef_gap = std::max(coef_gap, std::abs(v.to_double()));
    if (t == 0) continue;
    // Leading function-value term lambda_t^2 (f(x_t) - f*).
    const int ft = p.points.at(p.iterate_point(t)).f_index;
    o.require(std::abs(scaled.v(ft).to_double() - lam[t] * lam[t]) <= 1e-12, fmt::format("f(x_{}) weight", t));
    o.require(std::abs(scaled.v(0).to_double() + lam[t] * lam[t]) <= 1e-12, fmt::format("f* weight at {}", t));
  }
  o.require(coef_gap <= 1e-12, fmt::format("potential differs from the closed form by {:.2e}", coef_gap));
  const std::vector<Coef> big = nag_lambdas(20);
  for (int t = 1; t <= 20; ++t) o.require(big[t].to_double() >= (t + 1) / 2.0, fmt::format("lambda_{} small", t));
  o.require(c.tau.to_double() <= 2.0 / ((T + 1) * (T + 1)), "tau above 2L/(T+1)^2");
  if (o.ok) {
    o.detail = fmt::format("max increase {:.1e}, closed-form gap {:.1e}, lambda_T >= (T+1)/2 for T <= 20", worst,
                           coef_gap);
  }
  return o;
}

Check quadratic() {
  Check o;
  for (const auto& [mu, L] : golden_params()) {
    const Polynomial P = residual_polynomials(gradient_descent(Coef(2) / (L + mu), 1)).back();
    const QuadraticBound b = worst_case_quadratic(P, mu, L);
    o.require(b.exact && *b.exact == (L - mu) / (L + mu), "GD 2/(L+mu) not exact");
    for (int T = 1; T <= 6; ++T) {
      const Polynomial R = residual_polynomials(gradient_descent(Coef(1) / L, T)).back();
      const QuadraticBound r = worst_case_quadratic(R, mu, L);
      Coef expect(1);
      for (int i = 0; i < T; ++i) expect *= Coef(1) - mu / L;
      o.require(r.exact && *r.exact == expect, fmt::format("GD 1/L T={} not exact", T));
    }
  }
  int compared = 0;
  for (const auto& file : corpus()) {
    const ProblemConfig cfg = load_config(file.string());
    if (!cfg.method.is_explicit() || !cfg.cls.L || cfg.metric.kind == PerformanceMetric::Kind::MinGradientNormSquared)
      continue;
    const PepProblem p = cfg.build();
    const double pep = solve(p, cfg.solver.tol, cfg.solver.max_iter).diagnostics.primal_objective;
    const double R2 = (cfg.init.R * cfg.init.R).to_double();
    const double qv = quadratic_worst_case(cfg.method, cfg.cls, cfg.metric, cfg.init).value * R2;
    o.require(qv <= pep + 1e-6, fmt::format("{}: quadratic {:.9f} above PEP {:.9f}", file.stem().string(), qv, pep));
    ++compared;
  }
  if (o.ok) o.detail = fmt::format("closed forms exact; {} corpus problems below their PEP value", compared);
  return o;
}

Check unused() {
  Check o;
  for (const auto& [mu, L] : golden_params()) {
    const PepProblem p = line_search(mu, L);
    const UnusedReport u = unused_constraints(extract(solve(p, 1e-9), p));
    o.require(u.ids == std::vector<std::string>{"IC(0,*)", "IC(1,*)", "IC(1,0)"},
              "unused set differs for mu=" + mu.str());
  }
  if (o.ok) o.detail = "{IC(0,*), IC(1,*), IC(1,0)}";
  return o;
}

int run(const std::string& cmd) {
  const int rc = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

Check cli() {
  Check o;
  const fs::path work = fs::temp_directory_path() / "pepcert_acceptance";
  fs::remove_all(work);
  const auto files = corpus();
  const std::string exe = quote(PEPCERT_CLI);
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string name = files[i].stem().string();
    const fs::path out = work / name;
    o.require(run(exe + " analyze " + quote(files[i]) + " --out " + quote(out)) == 0, name + ": analyze");
    const fs::path cert = out / "cert.json";
    o.require(run(exe + " verify " + quote(cert) + " " + quote(files[i])) == 0, name + ": verify");

    nlohmann::json doc;
    std::ifstream(cert) >> doc;
    const Coef tau = doc["tau"].is_string() ? Coef::parse(doc["tau"].get<std::string>()) : Coef::real(doc["tau"]);
    doc["tau"] = tau.is_exact() ? nlohmann::json((tau / Coef(2)).str()) : nlohmann::json(tau.to_double() / 2);
    const fs::path bad = out / "tampered.json";
    std::ofstream(bad) << doc.dump(2);
    o.require(run(exe + " verify " + quote(bad) + " " + quote(files[i])) == 3, name + ": tampered certificate");

    const fs::path& other = files[(i + 1) % files.size()];
    o.require(run(exe + " verify " + quote(cert) + " " + quote(other)) == 4, name + ": mismatched config");
  }
  fs::remove_all(work);
  if (o.ok) o.detail = fmt::format("{} corpus problems: verify 0, tampered 3, mismatched 4", files.size());
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"GDLS golden rate", rate},
      {"GDLS golden multipliers", multipliers},
      {"golden matrices", matrices},
      {"certificate soundness on random quadratics", soundness},
      {"worst-case tightness", tightness},
      {"method recovery", recovery},
      {"NAG Lyapunov decrease", lyapunov},
      {"quadratic module", quadratic},
      {"unused-constraint report", unused},
      {"CLI round trip", cli},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.ok;
    std::cout << fmt::format("{} {:>2}. {}: {}", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail)
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

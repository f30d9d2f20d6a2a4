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

#include "pepcert/analyze.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pepcert/format.hpp"
#include "pepcert/lyapunov.hpp"
#include "pepcert/quadratic.hpp"

namespace pepcert {

namespace {

using nlohmann::json;

std::string sci(double x) { return fmt::format("{:.3e}", x); }

std::string problem_header(const ProblemConfig& cfg, const PepProblem& p) {
  std::ostringstream os;
  os << "- class: " << cfg.cls.describe() << "\n";
  os << "- method: " << cfg.method.name << ", T = " << cfg.T << "\n";
  os << "- metric: " << p.metric_notation << "\n";
  os << "- initialization: " << p.init_notation << " ≤ " << display(cfg.init.R * cfg.init.R) << "\n";
  os << "- Gram basis: " << p.n() << " vectors, " << p.f_dim << " function values, " << p.atom_count()
     << " constraints\n";
  return os.str();
}

std::string diagnostics_table(const PrimalDualSolution& s) {
  const SolveDiagnostics& d = s.diagnostics;
  std::ostringstream os;
  os << "| quantity | value |\n|---|---|\n";
  os << "| status | " << to_string(s.status) << " |\n";
  os << "| iterations | " << d.iterations << " |\n";
  os << "| primal objective | " << display(d.primal_objective) << " |\n";
  os << "| dual objective | " << display(d.dual_objective) << " |\n";
  os << "| gap | " << sci(d.gap) << " |\n";
  os << "| primal residual | " << sci(d.primal_residual) << " |\n";
  os << "| dual residual | " << sci(d.dual_residual) << " |\n";
  os << "| min eig G | " << sci(d.min_eig_G) << " |\n";
  os << "| min eig S | " << sci(d.min_eig_S) << " |\n";
  os << "| min inequality multiplier | " << sci(d.min_ineq_multiplier) << " |\n";
  return os.str();
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

std::string worst_case_doc(const PepProblem& p, const PrimalDualSolution& s) {
  const WorstCaseInstance w = reconstruct_worst_case(p, s.F, s.G, 1e-9);
  const MembershipResult member = membership_check(w.samples, p.cls, 1e-6);
  json doc;
  doc["dimension"] = w.dimension;
  doc["metric_value"] = w.metric_value;
  doc["init_value"] = w.init_value;
  json pts = json::array();
  for (int i = 0; i < p.points.size(); ++i) {
    const OracleSample& smp = w.samples[i];
    pts.push_back({{"tag", p.points.at(i).tag},
                   {"x", vector_json(smp.x)},
                   {"g", vector_json(smp.g)},
                   {"f", smp.f}});
  }
  doc["points"] = std::move(pts);
  doc["membership"] = {{"member", member.member}, {"worst_violation", member.worst_violation}};
  return doc.dump(2) + "\n";
}

std::string lyapunov_doc(const PepProblem& p, const Certificate& cert, const SolverOptions& opt,
                         std::vector<PotentialStepRecord>& records) {
  const PotentialSequence seq = build_potentials(p, cert);
  records = potential_records(seq, p);
  std::vector<DecreaseCheck> checks;
  for (int t = 0; t < seq.T(); ++t) checks.push_back(verify_decrease(seq, p, t, opt.tol, opt));
  std::string out = render_potentials(seq, p, checks);

  // For NAG the textbook multipliers give the closed-form potentials.
  try {
    const Certificate ref = nag_classical_certificate(p);
    const PotentialSequence rs = build_potentials(p, ref);
    const Coef half_L = *p.cls.L / Coef(2);
    std::ostringstream os;
    os << "\n## Reference NAG potentials\n\n";
    os << "Reference certificate (λ_s² on IC(x_s, y_s), λ_{s+1} on IC(*, y_s), λ_{s+1}² on IC(y_s, x_{s+1}), "
          "divided by λ_T²): τ = "
       << display(ref.tau) << ", verdict " << ref.verdict << ".\n\n";
    os << "Gradient terms at y_s are squared.\n\n";
    os << "| t | λ_t² | max coefficient gap of (L/2)·V_t |\n|---|---|---|\n";
    const std::vector<Coef> lam = nag_lambdas(p.method.T);
    for (int t = 0; t <= rs.T(); ++t) {
      const ScalarExpr diff = half_L * rs.V[t] - nag_reference_potential(p, t, true);
      double gap = std::abs(diff.c().to_double());
      for (const auto& [k, w] : diff.v_terms()) gap = std::max(gap, std::abs(w.to_double()));
      for (const auto& [ij, w] : diff.m_terms()) gap = std::max(gap, std::abs(w.to_double()));
      os << "| " << t << " | " << display(lam[t] * lam[t]) << " | " << sci(gap) << " |\n";
    }
    out += os.str();
  } catch (const LyapunovError&) {
  }
  return out;
}

std::string report_doc(const ProblemConfig& cfg, const PepProblem& p, const PrimalDualSolution& s,
                       const std::optional<Certificate>& cert, const std::string& extra) {
  std::ostringstream os;
  os << "# Worst-case analysis\n\n" << problem_header(cfg, p) << "\n";
  os << "## Result\n\n";
  os << "- rate τ = " << display(s.tau) << "\n";
  os << "- worst case " << p.metric_notation << " ≤ " << display(s.diagnostics.primal_objective) << " (τ·R²)\n";
  if (cert) {
    os << "- certificate: " << cert->verdict << (cert->exact ? ", exact rational multipliers" : "")
       << ", τ = " << display(cert->tau) << "\n";
  }
  os << "\n## Solver\n\n" << diagnostics_table(s) << extra;
  return os.str();
}

std::string structure_doc(const ProblemConfig& cfg, const PepProblem& p, const Certificate& cert) {
  std::ostringstream os;
  const UnusedReport unused = unused_constraints(cert);
  os << "\n## Unused constraints\n\n";
  if (unused.ids.empty()) os << "none\n";
  for (const auto& id : unused.ids) os << "- " << id << "\n";
  if (!unused.note.empty()) os << "\n" << unused.note << "\n";

  if (!p.method.is_explicit()) {
    os << "\n## Grouped algorithm constraints\n\n";
    const auto grouped = group_algorithm_constraints(cert, p);
    for (const auto& g : grouped) {
      os << "- " << g.display << ": w = " << render(g.w, p.basis) << " (from";
      for (const auto& id : g.atoms) os << " " << id;
      os << ")\n";
    }
    try {
      const CoefficientTable table = recover_explicit_method(grouped, p.method);
      os << "\nRecovered explicit method:\n\n";
      for (int k = 0; k < table.rows(); ++k) {
        os << "- " << p.method.queries.at(k + 1).display << " = x_0";
        for (std::size_t s = 0; s < table.gamma[k].size(); ++s) {
          os << signed_term(-table.gamma[k][s], "∇f(" + p.method.queries.at(s).display + ")", false);
        }
        os << "\n";
      }
    } catch (const std::exception& e) {
      os << "\nNo explicit method recovered: " << e.what() << "\n";
    }
  }

  if (cfg.analyses.backtracking_report) {
    const BacktrackingReport bt = backtracking_report(cert, p);
    os << "\n## Backtracking compatibility\n\n";
    for (const auto& [id, kind] : bt.used) os << "- " << id << ": " << to_string(kind) << "\n";
    os << "\nCompatible with a backtracking line search: " << (bt.compatible ? "yes" : "no") << "\n";
  }
  return os.str();
}

}  // namespace

AnalysisResult analyze(const ProblemConfig& config, double tol) {
  AnalysisResult out;
  const PepProblem p = config.build();
  SolverOptions opt = config.solver;
  if (tol > 0.0) opt.tol = tol;

  const PrimalDualSolution s = solve(p, InteriorPointSolver{}, opt);
  out.tau = s.tau;
  out.objective = s.diagnostics.primal_objective;
  if (!s.converged()) {
    out.outcome = Outcome::SolverFailure;
    out.summary = "solver: " + to_string(s.status) + (s.message.empty() ? "" : " (" + s.message + ")");
    out.files["report.md"] = report_doc(config, p, s, std::nullopt, "");
    return out;
  }

  ExtractOptions xo;
  xo.tolerances.solver = opt.tol;
  Certificate cert;
  try {
    cert = extract(s, p, xo);
  } catch (const CertificateError& e) {
    out.outcome = Outcome::SolverFailure;
    out.summary = e.what();
    out.files["report.md"] = report_doc(config, p, s, std::nullopt, "");
    return out;
  }
  const bool pass = cert.verdict == "PASS";
  std::string extra;
  if (pass) extra = structure_doc(config, p, cert);

  if (config.analyses.lyapunov && pass) {
    out.files["lyapunov.md"] = lyapunov_doc(p, cert, opt, cert.lyapunov);
  }
  if (config.analyses.quadratic) {
    try {
      out.files["quadratic.md"] = quadratic_report(config, s.diagnostics.primal_objective);
    } catch (const QuadraticError& e) {
      out.files["quadratic.md"] = "# Quadratic class\n\nNot available: " + std::string(e.what()) + "\n";
    }
  }
  if (config.analyses.worst_case_instance) {
    try {
      out.files["worst_case.json"] = worst_case_doc(p, s);
    } catch (const PepError& e) {
      extra += "\nWorst-case instance not reconstructed: " + std::string(e.what()) + "\n";
    }
  }
  if (config.analyses.proof && pass) out.files["proof.md"] = render_proof(cert, p);
  if (config.analyses.certificate) out.files["cert.json"] = to_json(cert).dump(2) + "\n";
  out.files["report.md"] = report_doc(config, p, s, cert, extra);

  out.outcome = pass ? Outcome::Pass : Outcome::VerificationFailure;
  out.summary = fmt::format("tau = {} ({}), certificate {}", display(s.tau), to_string(s.status), cert.verdict);
  out.certificate = std::move(cert);
  return out;
}

void write_artifacts(const AnalysisResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, body] : result.files) {
    const std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    f << body;
    if (!f) throw std::runtime_error("cannot write " + path.string());
  }
}

AnalysisResult verify_certificate(const nlohmann::json& certificate, const ProblemConfig& config) {
  AnalysisResult out;
  Certificate cert;
  try {
    cert = certificate_from_json(certificate);
  } catch (const CertificateFormatError& e) {
    out.outcome = Outcome::SchemaError;
    out.summary = std::string("malformed certificate: ") + e.what();
    return out;
  }
  const PepProblem p = config.build();
  try {
    const VerificationReport rep = verify(cert, p, cert.tolerances.verify);
    std::ostringstream os;
    os << rep.verdict() << ": residual " << sci(rep.vector_residual) << ", min eig S " << sci(rep.min_eig_slack);
    if (rep.exact_pass) os << ", exact check " << (*rep.exact_pass ? "pass" : "fail");
    for (const auto& id : rep.sign_violations) os << "\n  negative multiplier: " << id;
    for (const auto& id : rep.missing) os << "\n  missing multiplier: " << id;
    for (const auto& id : rep.unknown) os << "\n  unknown constraint: " << id;
    out.summary = os.str();
    out.tau = cert.tau.to_double();
    out.outcome = rep.pass ? Outcome::Pass : Outcome::VerificationFailure;
  } catch (const FingerprintMismatch& e) {
    out.outcome = Outcome::FingerprintMismatch;
    out.summary = e.what();
  }
  return out;
}

std::string quadratic_report(const ProblemConfig& config, std::optional<double> pep_value) {
  if (!config.cls.L) throw QuadraticError("quadratic analysis needs a finite L");
  const Coef& mu = config.cls.mu;
  const Coef& L = *config.cls.L;
  const std::vector<Polynomial> P = residual_polynomials(config.method);
  std::ostringstream os;
  os << "# Quadratic class\n\nSpectrum of H in [" << display(mu) << ", " << display(L) << "].\n\n";
  os << "| t | P_t(λ) | sup |P_t| | attained at |\n|---|---|---|---|\n";
  for (std::size_t t = 0; t < P.size(); ++t) {
    const QuadraticBound b = worst_case_quadratic(P[t], mu, L);
    os << "| " << t << " | " << P[t].str() << " | " << (b.exact ? display(*b.exact) : display(b.value)) << " | "
       << display(b.lambda_star) << " |\n";
  }
  try {
    const QuadraticBound w = quadratic_worst_case(config.method, config.cls, config.metric, config.init);
    const PepProblem p = config.build();
    os << "\nWorst case of (" << p.metric_notation << ") / (" << p.init_notation << ") on quadratics: "
       << (w.exact ? display(*w.exact) : display(w.value)) << " at λ = " << display(w.lambda_star) << "\n";
    if (pep_value) {
      const double r2 = (config.init.R * config.init.R).to_double();
      os << "PEP rate on the smooth convex class: " << display(*pep_value / r2) << "\n";
    }
  } catch (const QuadraticError& e) {
    os << "\nMetric worst case not available: " << e.what() << "\n";
  }
  return os.str();
}

}  // namespace pepcert

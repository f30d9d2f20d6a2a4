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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

namespace pepcert {
namespace {

double max_abs_coefficient(const ScalarExpr& e) {
  double m = std::abs(e.c().to_double());
  for (const auto& [k, w] : e.v_terms()) m = std::max(m, std::abs(w.to_double()));
  for (const auto& [k, w] : e.m_terms()) m = std::max(m, std::abs(w.to_double()));
  return m;
}

PepProblem nag_problem(int T) {
  return build(FunctionClassSpec::smooth_strongly_convex(Coef(0), Coef(1)), nag(Coef(1), T), {}, {});
}

TEST(Lyapunov, IdentityMethodHasFlatPotential) {
  CoefficientTable t;
  t.gamma = {{Coef(0)}};
  PerformanceMetric m;
  m.kind = PerformanceMetric::Kind::DistanceSquared;
  const PepProblem p = build(FunctionClassSpec::smooth_strongly_convex(Coef(0), Coef(1)), explicit_method(t), m, {});
  const Certificate c = extract(solve(p), p);
  EXPECT_EQ(c.tau, Coef(1));
  const PotentialSequence seq = build_potentials(p, c);
  ASSERT_EQ(seq.T(), 1);
  EXPECT_EQ(seq.V[0], p.init_expr);
  const DecreaseCheck d = verify_decrease(seq, p, 0, 1e-8);
  EXPECT_TRUE(d.certified);
  EXPECT_NEAR(d.max_increase, 0.0, 1e-8);
  EXPECT_THROW(verify_decrease(seq, p, 1, 1e-8), LyapunovError);
}

TEST(Lyapunov, ClassicalNagCertificate) {
  const int T = 5;
  const PepProblem p = nag_problem(T);
  const Certificate c = nag_classical_certificate(p);
  const std::vector<double> lam = oracle::nag_lambdas(T + 2);
  EXPECT_NEAR(c.tau.to_double(), 0.5 / (lam[T] * lam[T]), 1e-14);
  EXPECT_TRUE(verify(c, p, 1e-9).pass);
  const PotentialSequence seq = build_potentials(p, c);
  EXPECT_EQ(seq.V[0], p.init_expr);
  EXPECT_TRUE(telescopes(seq));
  for (int t = 0; t < T; ++t) {
    const DecreaseCheck d = verify_decrease(seq, p, t, 1e-8);
    EXPECT_TRUE(d.certified) << t << " " << d.max_increase << " " << d.message;
  }
  for (int t = 0; t <= T; ++t) {
    const ScalarExpr gap = seq.V[t] * Coef::ratio(1, 2) - nag_reference_potential(p, t, true);
    EXPECT_LT(max_abs_coefficient(gap), 1e-12) << t;
  }
  // Gradient-norm terms accumulated in V_T carry nonnegative weights; the
  // last one is lambda_T^2 / (2L).
  const ScalarExpr extra = nag_reference_potential(p, T, true) - nag_reference_potential(p, T, false);
  for (int t = 1; t <= T; ++t) {
    const int g = p.basis.index_of(BasisLabel::gradient(p.method.iterates[t]));
    EXPECT_GE(extra.m(g, g).to_double(), 0.0) << t;
  }
  const int last = p.basis.index_of(BasisLabel::gradient(p.method.final_iterate()));
  EXPECT_NEAR(extra.m(last, last).to_double(), lam[T] * lam[T] / 2, 1e-12);
}

// V_t from the tight certificate also decreases, and tau V_T = metric + <S, G>.
TEST(Lyapunov, TightCertificatePotentials) {
  const PepProblem p = nag_problem(3);
  const Certificate c = extract(solve(p), p);
  const PotentialSequence seq = build_potentials(p, c);
  EXPECT_TRUE(telescopes(seq));
  for (int t = 0; t < 3; ++t) EXPECT_LE(verify_decrease(seq, p, t, 1e-6).max_increase, 1e-6);
  const ScalarExpr last = seq.V.back() * c.tau - p.metric_expr;
  const ProofChain chain = proof_chain(c, p);
  EXPECT_LT(max_abs_coefficient(last - chain.slack), 1e-7);
}

TEST(Lyapunov, RecordsAndRendering) {
  const PepProblem p = nag_problem(2);
  const Certificate c = nag_classical_certificate(p);
  const PotentialSequence seq = build_potentials(p, c);
  const auto records = potential_records(seq, p);
  std::size_t atoms = 0;
  for (const auto& r : records) atoms += r.atoms.size();
  std::size_t nonzero = 0;
  for (const auto& [id, lam] : c.multipliers) nonzero += !lam.is_zero();
  EXPECT_EQ(atoms, nonzero);
  const std::string md = render_potentials(seq, p, {verify_decrease(seq, p, 0, 1e-8), verify_decrease(seq, p, 1, 1e-8)});
  EXPECT_NE(md.find("V_2"), std::string::npos);
  EXPECT_NE(md.find("PASS"), std::string::npos);
}

TEST(Lyapunov, Errors) {
  const PepProblem p = nag_problem(2);
  Certificate c = nag_classical_certificate(p);
  c.multipliers.erase(c.multipliers.begin());
  EXPECT_THROW(build_potentials(p, c), LyapunovError);
  c.tau = Coef(0);
  EXPECT_THROW(build_potentials(p, c), LyapunovError);
  const PepProblem strong =
      build(FunctionClassSpec::smooth_strongly_convex(Coef::ratio(1, 10), Coef(1)), nag(Coef(1), 2), {}, {});
  EXPECT_THROW(nag_classical_certificate(strong), LyapunovError);
}

// lambda_T >= (T + 1) / 2, so V_0 / lambda_T^2 gives the O(1/T^2) rate.
TEST(Lyapunov, NagLambdaGrowth) {
  const std::vector<Coef> lam = nag_lambdas(20);
  for (int T = 1; T <= 20; ++T) EXPECT_GE(lam[T].to_double(), (T + 1) / 2.0 - 1e-12) << T;
}

}  // namespace
}  // namespace pepcert

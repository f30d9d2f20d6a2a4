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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace pepcert {
namespace {

PepProblem gdls_problem(const Coef& mu, const Coef& L) {
  InitialCondition init;
  init.kind = InitialCondition::Kind::FunctionValueGap;
  return build(FunctionClassSpec::smooth_strongly_convex(mu, L), gdls(1), {}, init);
}

Certificate solved(const PepProblem& p) {
  const PrimalDualSolution s = solve(p);
  EXPECT_TRUE(s.converged()) << s.message;
  return extract(s, p);
}

TEST(Certificate, LineSearchMultipliersAreExact) {
  const PepProblem p = gdls_problem(Coef::ratio(1, 10), Coef(1));
  const Certificate c = solved(p);
  EXPECT_TRUE(c.exact);
  EXPECT_EQ(c.verdict, "PASS");
  EXPECT_EQ(c.tau, Coef::ratio(81, 121));
  EXPECT_EQ(c.multipliers.at("IC(*,0)"), Coef::ratio(18, 121));
  EXPECT_EQ(c.multipliers.at("IC(*,1)"), Coef::ratio(2, 11));
  EXPECT_EQ(c.multipliers.at("IC(0,1)"), Coef::ratio(9, 11));
  EXPECT_EQ(c.multipliers.at("ALG(1)"), Coef::ratio(20, 11));
  EXPECT_EQ(c.multipliers.at("ALG(2)"), Coef(1));
  EXPECT_EQ(c.multipliers.count("INIT"), 0u);
  const VerificationReport r = verify(c, p, 1e-9);
  EXPECT_TRUE(r.pass);
  ASSERT_TRUE(r.exact_pass.has_value());
  EXPECT_TRUE(*r.exact_pass);
}

TEST(Certificate, TamperingFailsVerification) {
  const PepProblem p = gdls_problem(Coef::ratio(1, 10), Coef(1));
  Certificate c = solved(p);
  Certificate smaller = c;
  smaller.tau = Coef::ratio(80, 121);
  EXPECT_FALSE(verify(smaller, p, 1e-7).pass);
  Certificate negative = c;
  negative.multipliers["IC(0,*)"] = Coef(-1);
  const auto r = verify(negative, p, 1e-7);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.sign_violations.empty());
  Certificate missing = c;
  missing.multipliers.erase("IC(0,1)");
  EXPECT_FALSE(verify(missing, p, 1e-7).missing.empty());
  Certificate unknown = c;
  unknown.multipliers["IC(7,8)"] = Coef(0);
  EXPECT_FALSE(verify(unknown, p, 1e-7).unknown.empty());
  const PepProblem other = gdls_problem(Coef::ratio(1, 5), Coef(1));
  EXPECT_THROW(verify(c, other, 1e-7), FingerprintMismatch);
}

TEST(Certificate, JsonRoundTrip) {
  const PepProblem p = gdls_problem(Coef::ratio(1, 10), Coef(1));
  const Certificate c = solved(p);
  const Certificate back = certificate_from_json(nlohmann::json::parse(to_json(c).dump()));
  EXPECT_EQ(back.tau, c.tau);
  EXPECT_EQ(back.multipliers, c.multipliers);
  EXPECT_EQ(back.fingerprint, c.fingerprint);
  EXPECT_TRUE(verify(back, p, 1e-9).pass);
  nlohmann::json bad = to_json(c);
  bad["extra"] = 1;
  EXPECT_THROW(certificate_from_json(bad), CertificateFormatError);
  bad = to_json(c);
  bad["multipliers"]["IC(*,0)"] = "x/y";
  try {
    certificate_from_json(bad);
    FAIL();
  } catch (const CertificateFormatError& e) {
    EXPECT_EQ(e.path, "$.multipliers.IC(*,0)");
  }
  bad = to_json(c);
  bad.erase("tau");
  EXPECT_THROW(certificate_from_json(bad), CertificateFormatError);
}

// metric - tau init = sum lambda atom - <S, G> as expressions, and the LDL
// squares reproduce <S, G>.
TEST(Certificate, ProofChainIsAnIdentity) {
  const PepProblem p = gdls_problem(Coef::ratio(1, 10), Coef(1));
  const Certificate c = solved(p);
  const ProofChain chain = proof_chain(c, p);
  EXPECT_EQ(chain.lhs, chain.combination - chain.slack);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd B(p.n(), p.n());
    for (int j = 0; j < p.n(); ++j) B.col(j) = oracle::random_point(rng, p.n());
    const Eigen::MatrixXd G = B.transpose() * B;
    const Eigen::VectorXd F = oracle::random_point(rng, p.f_dim);
    const auto v = chain.evaluate(F, G);
    EXPECT_NEAR(v.lhs, v.combination - v.slack, 1e-9);
    double squares = 0;
    for (const auto& [d, e] : chain.squares) squares += d.to_double() * (B * e.dense(p.basis)).squaredNorm();
    EXPECT_NEAR(squares, v.slack, 1e-9);
    EXPECT_GE(v.slack, -1e-12);
  }
  const std::string proof = render_proof(c, p);
  EXPECT_NE(proof.find("81/121"), std::string::npos);
}

TEST(Certificate, StructuralReports) {
  const PepProblem p = gdls_problem(Coef::ratio(1, 10), Coef(1));
  const Certificate c = solved(p);
  const UnusedReport u = unused_constraints(c);
  EXPECT_EQ(u.ids, (std::vector<std::string>{"IC(0,*)", "IC(1,*)", "IC(1,0)"}));
  const auto grouped = group_algorithm_constraints(c, p);
  ASSERT_EQ(grouped.size(), 1u);
  const CoefficientTable t = recover_explicit_method(grouped, p.method);
  ASSERT_EQ(t.rows(), 1);
  EXPECT_EQ(t.at(1, 0), Coef::ratio(20, 11));
  const BacktrackingReport b = backtracking_report(c, p);
  EXPECT_FALSE(b.compatible);
  bool alg_free = false;
  for (const auto& [id, kind] : b.used) {
    if (id == "ALG(1)") alg_free = kind == AtomObservability::ParameterFree;
  }
  EXPECT_TRUE(alg_free);
}

TEST(Certificate, RationalizeAndExactPsd) {
  const auto q = rationalize(0.66942148760330578, 1e-12, 1000);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, mpq_class(81, 121));
  EXPECT_FALSE(rationalize(3.14159265358979, 1e-14, 100).has_value());
  EXPECT_EQ(exact_psd({{Coef(2), Coef(1)}, {Coef(1), Coef(2)}}), std::optional<bool>(true));
  EXPECT_EQ(exact_psd({{Coef(1), Coef(2)}, {Coef(2), Coef(1)}}), std::optional<bool>(false));
  EXPECT_EQ(exact_psd({{Coef(0), Coef(0)}, {Coef(0), Coef(0)}}), std::optional<bool>(true));
  EXPECT_EQ(exact_psd({{Coef(0), Coef(1)}, {Coef(1), Coef(0)}}), std::optional<bool>(false));
  EXPECT_FALSE(exact_psd({{Coef::real(1.5)}}).has_value());
}

TEST(Certificate, UnconvergedSolveIsRejected) {
  const PepProblem p = gdls_problem(Coef::ratio(1, 10), Coef(1));
  const PrimalDualSolution s = solve(p, 1e-8, 1);
  EXPECT_THROW(extract(s, p), CertificateError);
}

}  // namespace
}  // namespace pepcert

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


#include "pepcert/quadratic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pepcert/sdp.hpp"

namespace pepcert {
namespace {

FunctionClassSpec cls(const Coef& mu, const Coef& L) { return FunctionClassSpec::smooth_strongly_convex(mu, L); }

double brute_sup(const Polynomial& P, double mu, double L, int n) {
  double best = 0;
  for (int i = 0; i <= n; ++i) best = std::max(best, std::abs(P(mu + (L - mu) * i / n)));
  return best;
}

TEST(Polynomial, Arithmetic) {
  const Polynomial a({Coef(1), Coef(-2)});
  const Polynomial b({Coef(0), Coef(1), Coef(3)});
  EXPECT_EQ((a * b).coefficients(), (std::vector<Coef>{Coef(0), Coef(1), Coef(1), Coef(-6)}));
  EXPECT_EQ((a + b - b), a);
  EXPECT_EQ(b.derivative(), Polynomial({Coef(1), Coef(6)}));
  EXPECT_EQ((a - a).degree(), -1);
  EXPECT_EQ(a(Coef::ratio(1, 2)), Coef(0));
  EXPECT_DOUBLE_EQ(b(2.0), 14.0);
  EXPECT_EQ(Polynomial::monomial(3).degree(), 3);
  EXPECT_EQ(Polynomial({Coef(1), Coef::ratio(-20, 11)}).str(), "1 − 20/11·λ");
}

TEST(Quadratic, GradientDescentPolynomials) {
  const auto P = residual_polynomials(gradient_descent(Coef::ratio(1, 3), 4));
  ASSERT_EQ(P.size(), 5u);
  const Polynomial step({Coef(1), Coef::ratio(-1, 3)});
  Polynomial expect = Polynomial::constant(Coef(1));
  for (int t = 0; t <= 4; ++t) {
    EXPECT_EQ(P[t], expect) << t;
    expect = expect * step;
  }
  EXPECT_THROW(residual_polynomials(gdls(2)), QuadraticError);
}

// x_t - x* = P_t(lambda) (x0 - x*) on the scalar quadratic with curvature lambda.
TEST(Quadratic, PolynomialsMatchIteration) {
  const auto P = residual_polynomials(heavy_ball_qg(Coef(1), 5));
  const auto Pn = residual_polynomials(nag(Coef(1), 5));
  oracle::Problem hb;
  hb.method = "hb-qg";
  hb.method_L = 1.0;
  hb.T = 5;
  oracle::Problem ng = hb;
  ng.method = "nag";
  for (double lam : {0.0, 0.05, 0.3, 0.77, 1.0}) {
    oracle::Quadratic q;
    q.h = Eigen::VectorXd::Constant(1, lam);
    q.xstar = Eigen::VectorXd::Constant(1, 0.5);
    const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(1, 2.0);
    const auto run = oracle::simulate(hb, q, x0);
    const auto runn = oracle::simulate(ng, q, x0);
    for (int t = 0; t <= 5; ++t) {
      EXPECT_NEAR(run.iterates[t][0] - 0.5, P[t](lam) * 1.5, 1e-12);
      EXPECT_NEAR(runn.iterates[t][0] - 0.5, Pn[t](lam) * 1.5, 1e-12);
    }
  }
}

TEST(Quadratic, SupMatchesBruteGrid) {
  const auto P = residual_polynomials(heavy_ball_qg(Coef(1), 5));
  const QuadraticBound b = worst_case_quadratic(P[5], Coef(0), Coef(1));
  EXPECT_NEAR(b.value, brute_sup(P[5], 0.0, 1.0, 100000), 1e-9);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> num(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Coef> c;
    for (int k = 0; k <= 2 + trial % 5; ++k) c.push_back(Coef::ratio(num(rng), 4));
    const Polynomial R(c);
    const QuadraticBound r = worst_case_quadratic(R, Coef::ratio(1, 10), Coef(2));
    EXPECT_NEAR(r.value, brute_sup(R, 0.1, 2.0, 100000), 1e-6 * (1 + r.value));
    EXPECT_GE(r.value, brute_sup(R, 0.1, 2.0, 100000) - 1e-12);
  }
  EXPECT_THROW(worst_case_quadratic(P[5], Coef(2), Coef(1)), QuadraticError);
}

TEST(Quadratic, ExactRatesForGradientDescent) {
  PerformanceMetric dist;
  dist.kind = PerformanceMetric::Kind::DistanceSquared;
  InitialCondition init;
  const auto c = cls(Coef::ratio(1, 10), Coef(1));
  const QuadraticBound b = quadratic_worst_case(gradient_descent(Coef::ratio(20, 11), 1), c, dist, init);
  ASSERT_TRUE(b.exact.has_value());
  EXPECT_EQ(*b.exact, Coef::ratio(81, 121));
  const QuadraticBound r = worst_case_quadratic(residual_polynomials(gradient_descent(Coef::ratio(20, 11), 1))[1],
                                                Coef::ratio(1, 10), Coef(1));
  ASSERT_TRUE(r.exact.has_value());
  EXPECT_EQ(*r.exact, Coef::ratio(9, 11));
  const QuadraticBound g = quadratic_worst_case(gradient_descent(Coef(1), 3), c, dist, init);
  EXPECT_NEAR(g.value, std::pow(0.9, 6), 1e-12);
}

TEST(Quadratic, FunctionValueWeights) {
  // GD 1/L, mu = 0, f-gap over distance: sup lambda/2 (1 - lambda)^2 at lambda = 1/3.
  const auto c = cls(Coef(0), Coef(1));
  const QuadraticBound b = quadratic_worst_case(gradient_descent(Coef(1), 1), c, {}, {});
  EXPECT_NEAR(b.value, 2.0 / 27.0, 1e-12);
  EXPECT_NEAR(b.lambda_star, 1.0 / 3.0, 1e-9);
  InitialCondition fgap;
  fgap.kind = InitialCondition::Kind::FunctionValueGap;
  PerformanceMetric dist;
  dist.kind = PerformanceMetric::Kind::DistanceSquared;
  EXPECT_TRUE(std::isinf(quadratic_worst_case(gradient_descent(Coef(1), 1), c, dist, fgap).value));
}

// Quadratics belong to F_{mu,L}, so their worst case is below the PEP value.
TEST(Quadratic, BelowPepValue) {
  PerformanceMetric dist;
  dist.kind = PerformanceMetric::Kind::DistanceSquared;
  const auto c = cls(Coef::ratio(1, 10), Coef(1));
  for (const auto& [m, metric] : std::vector<std::pair<MethodSpec, PerformanceMetric>>{
           {gradient_descent(Coef(1), 3), dist},
           {gradient_descent(Coef::ratio(3, 2), 2), PerformanceMetric{}},
           {heavy_ball_qg(Coef(1), 3), PerformanceMetric{}}}) {
    const double pep = solve(build(c, m, metric, {}), 1e-9).tau;
    EXPECT_LE(quadratic_worst_case(m, c, metric, {}).value, pep + 1e-6) << m.name;
  }
}

TEST(Quadratic, Errors) {
  PerformanceMetric mg;
  mg.kind = PerformanceMetric::Kind::MinGradientNormSquared;
  EXPECT_THROW(quadratic_worst_case(gradient_descent(Coef(1), 2), cls(Coef(0), Coef(1)), mg, {}), QuadraticError);
  EXPECT_THROW(quadratic_worst_case(gradient_descent(Coef(1), 2), FunctionClassSpec::smooth_strongly_convex(Coef(0), std::nullopt), {}, {}),
               QuadraticError);
}

}  // namespace
}  // namespace pepcert

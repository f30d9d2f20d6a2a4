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


#include "pepcert/sdp.hpp"

#include <gtest/gtest.h>

#include <random>

namespace pepcert {
namespace {

SdpRow row(const std::string& id, Eigen::VectorXd v, Eigen::MatrixXd M, double rhs, bool eq = false) {
  return {id, std::move(v), std::move(M), rhs, eq};
}

// max <M, G> s.t. Tr(G) = 1 is the largest eigenvalue of M.
TEST(Sdp, TraceConstrainedEigenvalue) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 10; ++trial) {
    const int k = 2 + trial % 5;
    Eigen::MatrixXd A(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) A(i, j) = n(rng);
    SdpStandardForm sdp;
    sdp.n = k;
    sdp.f_dim = 0;
    sdp.obj_v = Eigen::VectorXd(0);
    sdp.obj_M = (A + A.transpose()) / 2;
    sdp.rows.push_back(row("TR", Eigen::VectorXd(0), Eigen::MatrixXd::Identity(k, k), 1.0, true));
    const auto s = InteriorPointSolver().solve(sdp, {1e-9, 100});
    ASSERT_TRUE(s.converged()) << s.message;
    const double top = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sdp.obj_M).eigenvalues().maxCoeff();
    EXPECT_NEAR(s.diagnostics.primal_objective, top, 1e-7);
    EXPECT_NEAR(s.multipliers[0], top, 1e-7);
    EXPECT_LT(s.diagnostics.dual_residual, 1e-8);
    EXPECT_GT(s.diagnostics.min_eig_S, -1e-8);
  }
}

// max F0 s.t. F0 - G00 <= 0, G00 <= 2, G01 = 1/2 (with G PSD).
TEST(Sdp, FreeVariablesAndEqualities) {
  SdpStandardForm sdp;
  sdp.n = 2;
  sdp.f_dim = 1;
  sdp.obj_v = Eigen::VectorXd::Ones(1);
  sdp.obj_M = Eigen::MatrixXd::Zero(2, 2);
  Eigen::MatrixXd e00 = Eigen::MatrixXd::Zero(2, 2);
  e00(0, 0) = 1;
  Eigen::MatrixXd e01 = Eigen::MatrixXd::Zero(2, 2);
  e01(0, 1) = e01(1, 0) = 0.5;
  sdp.rows.push_back(row("A", Eigen::VectorXd::Ones(1), -e00, 0.0));
  sdp.rows.push_back(row("B", Eigen::VectorXd::Zero(1), e00, 2.0));
  sdp.rows.push_back(row("C", Eigen::VectorXd::Zero(1), e01, 0.5, true));
  EXPECT_NO_THROW(sdp.validate());
  const auto s = InteriorPointSolver().solve(sdp, {1e-9, 100});
  ASSERT_TRUE(s.converged()) << s.message;
  EXPECT_NEAR(s.F[0], 2.0, 1e-6);
  EXPECT_NEAR(s.multipliers[0], 1.0, 1e-6);
  EXPECT_NEAR(s.multipliers[1], 1.0, 1e-6);
  EXPECT_NEAR(s.multipliers[2], 0.0, 1e-6);
  EXPECT_NEAR(s.G(0, 1), 0.5, 1e-7);
  const auto d = evaluate_solution(sdp, s.F, s.G, s.multipliers);
  EXPECT_LT(d.primal_residual, 1e-7);
  EXPECT_LT(d.gap, 1e-6);
}

TEST(Sdp, DuplicateRowsKeepOneMultiplier) {
  SdpStandardForm sdp;
  sdp.n = 2;
  sdp.f_dim = 0;
  sdp.obj_v = Eigen::VectorXd(0);
  sdp.obj_M = Eigen::MatrixXd::Identity(2, 2);
  for (int i = 0; i < 3; ++i) sdp.rows.push_back(row("T" + std::to_string(i), Eigen::VectorXd(0), Eigen::MatrixXd::Identity(2, 2), 3.0));
  const auto s = InteriorPointSolver().solve(sdp, {1e-9, 100});
  ASSERT_TRUE(s.converged()) << s.message;
  EXPECT_NEAR(s.diagnostics.primal_objective, 3.0, 1e-7);
  EXPECT_NEAR(s.multipliers.sum(), 1.0, 1e-7);
  EXPECT_NEAR(s.multipliers[0], 1.0, 1e-7);
}

TEST(Sdp, DetectsUnboundedness) {
  SdpStandardForm sdp;
  sdp.n = 2;
  sdp.f_dim = 0;
  sdp.obj_v = Eigen::VectorXd(0);
  sdp.obj_M = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd e00 = Eigen::MatrixXd::Zero(2, 2);
  e00(0, 0) = 1;
  sdp.rows.push_back(row("A", Eigen::VectorXd(0), e00, 1.0));
  const auto s = InteriorPointSolver().solve(sdp, {1e-8, 100});
  EXPECT_FALSE(s.converged());
  EXPECT_EQ(s.status, SolveStatus::Unbounded);
}

TEST(Sdp, RejectsMalformedData) {
  SdpStandardForm sdp;
  sdp.n = 2;
  sdp.f_dim = 0;
  sdp.obj_v = Eigen::VectorXd(0);
  sdp.obj_M = Eigen::MatrixXd::Zero(2, 2);
  sdp.obj_M(0, 1) = 1;
  EXPECT_THROW(sdp.validate(), std::invalid_argument);
  sdp.obj_M = Eigen::MatrixXd::Zero(3, 3);
  EXPECT_THROW(sdp.validate(), std::invalid_argument);
}

// Gradient descent with step 1/L on F_{0,L}: f(x_T) - f* <= L R^2 / (4T + 2).
TEST(Sdp, GradientDescentKnownRates) {
  const auto c = FunctionClassSpec::smooth_strongly_convex(Coef(0), Coef(1));
  for (int T = 1; T <= 4; ++T) {
    const PepProblem p = build(c, gradient_descent(Coef(1), T), {}, {});
    const auto s = solve(p, 1e-9);
    ASSERT_TRUE(s.converged()) << s.message;
    EXPECT_NEAR(s.tau, 1.0 / (4 * T + 2), 1e-7) << T;
    EXPECT_TRUE(s.diagnostics.within(1e-6));
  }
  EXPECT_THROW(solve(build(c, gradient_descent(Coef(1), 1), {}, {}), 0.5), std::invalid_argument);
}

TEST(Sdp, SolverReportsIterationCap) {
  const auto c = FunctionClassSpec::smooth_strongly_convex(Coef(0), Coef(1));
  const PepProblem p = build(c, gradient_descent(Coef(1), 3), {}, {});
  const auto s = solve(p, 1e-9, 2);
  EXPECT_EQ(s.status, SolveStatus::MaxIterations);
  EXPECT_EQ(to_string(SolveStatus::MaxIterations).empty(), false);
}

// Radius R and cR give objectives in ratio c^2 and the same rate.
TEST(Sdp, ScalingInvariance) {
  const auto c = FunctionClassSpec::smooth_strongly_convex(Coef::ratio(1, 10), Coef(1));
  InitialCondition one;
  InitialCondition three;
  three.R = Coef(3);
  for (const auto& m : {gdls(2), gradient_descent(Coef(1), 3), nag(Coef(1), 3)}) {
    const auto a = solve(build(c, m, {}, one), 1e-9);
    const auto b = solve(build(c, m, {}, three), 1e-9);
    ASSERT_TRUE(a.converged() && b.converged()) << m.name;
    EXPECT_NEAR(b.diagnostics.primal_objective, 9 * a.diagnostics.primal_objective, 1e-7) << m.name;
    EXPECT_NEAR(a.tau, b.tau, 1e-7) << m.name;
  }
}

TEST(Sdp, ComplementarySlackness) {
  const double tol = 1e-8;
  const auto c = FunctionClassSpec::smooth_strongly_convex(Coef::ratio(1, 10), Coef(1));
  PerformanceMetric grad;
  grad.kind = PerformanceMetric::Kind::GradientNormSquared;
  for (const auto& p : {build(c, gdls(1), {}, {}), build(c, gfom(2), {}, {}), build(c, gradient_descent(Coef(1), 4), grad, {})}) {
    const auto s = solve(p, tol);
    ASSERT_TRUE(s.converged());
    EXPECT_LE((s.G * s.slack).trace(), p.n() * tol);
    for (int k = 0; k < p.atom_count(); ++k) {
      if (p.atoms[k].sense != Sense::LessEqual) continue;
      EXPECT_GE(s.multipliers[k], -tol) << p.atoms[k].id;
      const double value = p.atoms[k].expr.evaluate(s.F, s.G);
      EXPECT_LE(std::abs(s.multipliers[k] * value), tol) << p.atoms[k].id;
    }
  }
}

}  // namespace
}  // namespace pepcert

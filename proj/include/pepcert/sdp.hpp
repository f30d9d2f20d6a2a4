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

// Dense primal-dual interior-point solver for the lifted problem
//
//   maximize  <v_P, F> + <M_P, G>
//   s.t.      <v_k, F> + <M_k, G> (<= or =) rhs_k,   G PSD, F free.
//
// Its dual is
//
//   minimize  sum_k lambda_k rhs_k
//   s.t.      v_P = sum_k lambda_k v_k,
//             S = sum_k lambda_k M_k - M_P PSD,
//             lambda_k >= 0 on inequality rows,
//
// which for a PEP with initialization atom <v_I, F> + <M_I, G> <= R^2 reads
// "minimize tau R^2" with tau = lambda_I.

#pragma once

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pepcert/pep.hpp"

namespace pepcert {

struct SdpRow {
  std::string id;
  Eigen::VectorXd v;
  Eigen::MatrixXd M;
  double rhs = 0.0;
  bool equality = false;
};

struct SdpStandardForm {
  int n = 0;      ///< PSD block size
  int f_dim = 0;  ///< free variables
  Eigen::VectorXd obj_v;
  Eigen::MatrixXd obj_M;
  std::vector<SdpRow> rows;
  /// Row index holding the initialization atom, -1 if none.
  int init_row = -1;

  int m() const { return static_cast<int>(rows.size()); }
  /// Throws std::invalid_argument on asymmetric or nonconformant data.
  void validate() const;
  /// Row k is atom k: rhs = -c_k.
  static SdpStandardForm from_problem(const PepProblem& problem);
};

enum class SolveStatus { Optimal, MaxIterations, Stalled, Unbounded, NumericalError };
std::string to_string(SolveStatus status);

struct SolverOptions {
  double tol = 1e-8;
  int max_iter = 100;
};

struct SolveDiagnostics {
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;
  /// Largest constraint violation of (F, G) (inequality excess or equality error).
  double primal_residual = 0.0;
  /// ||v_P - sum lambda_k v_k||_inf.
  double dual_residual = 0.0;
  double min_eig_G = 0.0;
  double min_eig_S = 0.0;
  /// Most negative inequality multiplier (0 when all are nonnegative).
  double min_ineq_multiplier = 0.0;
  int iterations = 0;

  /// All measures within tol.
  bool within(double tol) const;
};

struct PrimalDualSolution {
  SolveStatus status = SolveStatus::NumericalError;
  std::string message;
  Eigen::VectorXd F;
  Eigen::MatrixXd G;
  /// Aligned with the rows (atoms) of the problem.
  Eigen::VectorXd multipliers;
  std::map<std::string, double> lambda;
  /// Multiplier of the initialization row (NaN when there is none).
  double tau = 0.0;
  /// S = sum_k lambda_k M_k - M_P.
  Eigen::MatrixXd slack;
  SolveDiagnostics diagnostics;

  bool converged() const { return status == SolveStatus::Optimal; }
};

/// Recomputes every diagnostic of (F, G, multipliers) from the original data.
SolveDiagnostics evaluate_solution(const SdpStandardForm& sdp, const Eigen::VectorXd& F,
                                   const Eigen::MatrixXd& G, const Eigen::VectorXd& multipliers);

class SdpSolver {
 public:
  virtual ~SdpSolver() = default;
  virtual std::string name() const = 0;
  virtual PrimalDualSolution solve(const SdpStandardForm& sdp, const SolverOptions& options) const = 0;
};

/// Mehrotra predictor-corrector with Nesterov-Todd scaling on the PSD block
/// and a nonnegative slack per inequality row.
class InteriorPointSolver final : public SdpSolver {
 public:
  std::string name() const override { return "pepcert-ipm"; }
  PrimalDualSolution solve(const SdpStandardForm& sdp, const SolverOptions& options) const override;
};

/// Solves a PEP with the built-in solver. tol must lie in (0, 1e-2].
PrimalDualSolution solve(const PepProblem& problem, double tol = 1e-8, int max_iter = 100);
PrimalDualSolution solve(const PepProblem& problem, const SdpSolver& solver, const SolverOptions& options);

}  // namespace pepcert

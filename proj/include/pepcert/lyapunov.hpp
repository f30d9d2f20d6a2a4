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

// Potential sequences obtained by partial summation of a certificate.
//
// With weights w_k = lambda_k / tau, V_0 is the initialization expression and
// V_t (t >= 1) adds w_k * atom_k for every atom whose data is available once
// x_t has been queried. Each increment is a nonnegative combination of
// constraints that hold along the run, so V is nonincreasing, and
// tau * V_T = metric + <S, G> >= metric.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pepcert/certificate.hpp"
#include "pepcert/pep.hpp"
#include "pepcert/sdp.hpp"

namespace pepcert {

class LyapunovError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PotentialSequence {
  /// V_0, ..., V_T.
  std::vector<ScalarExpr> V;
  /// (atom index, w_k) entering at step t; steps[0] is empty.
  std::vector<std::vector<std::pair<int, Coef>>> steps;
  /// 1 / tau.
  Coef scale;

  int T() const { return static_cast<int>(V.size()) - 1; }
};

/// Largest query ordinal among the points an atom touches (0 for atoms that
/// only touch the optimizer).
int query_step(const PepProblem& problem, const ConstraintAtom& atom);

/// Throws LyapunovError when tau vanishes or the certificate has no
/// multiplier for an atom.
PotentialSequence build_potentials(const PepProblem& problem, const Certificate& cert);

/// V_0 + sum_t (V_{t+1} - V_t) == V_T coefficientwise (exactly for rational
/// coefficients, up to rounding for floating ones).
bool telescopes(const PotentialSequence& potentials);

struct DecreaseCheck {
  int t = 0;
  /// max (V_{t+1} - V_t); NaN when the solve failed.
  double max_increase = 0.0;
  SolveStatus status = SolveStatus::Optimal;
  bool certified = false;
  std::string message;
};

/// Maximizes V_{t+1} - V_t over the atoms available after x_{t+1}, normalized
/// by Tr(G) <= 1 (the problem is homogeneous). Throws LyapunovError unless
/// 0 <= t < T.
DecreaseCheck verify_decrease(const PotentialSequence& potentials, const PepProblem& problem, int t, double tol,
                              const SolverOptions& options = {});

/// Per-step weighted atom lists for the certificate file.
std::vector<PotentialStepRecord> potential_records(const PotentialSequence& potentials, const PepProblem& problem);

std::string render_potentials(const PotentialSequence& potentials, const PepProblem& problem,
                              const std::vector<DecreaseCheck>& checks);

/// The textbook NAG proof on F_{0,L} for f(x_T) - f* under ||x0 - x*||^2 <= R^2:
/// lambda_s^2 IC(x_s, y_s) + lambda_{s+1} IC(*, y_s) + lambda_{s+1}^2 IC(y_s, x_{s+1}),
/// divided by lambda_T^2, with tau = L / (2 lambda_T^2). Floating multipliers.
/// Throws LyapunovError for any other problem.
Certificate nag_classical_certificate(const PepProblem& problem);

/// lambda_t^2 (f_t - f*) + L/2 ||lambda_t (x_t - x*) + (1 - lambda_t)(x_{t-1} - x*)||^2,
/// with x_{-1} = x_0. When `complete`, adds
/// 1/(2L) sum_{s < t} [lambda_{s+1}^2 |g(x_{s+1})|^2 + lambda_{s+1} |g(y_s)|^2
///                     + lambda_s^2 |g(y_s) - g(x_s)|^2].
ScalarExpr nag_reference_potential(const PepProblem& problem, int t, bool complete);

}  // namespace pepcert

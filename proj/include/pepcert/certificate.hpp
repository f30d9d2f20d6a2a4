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

// Dual certificates: extraction from a solve, solver-independent
// verification, proof rendering and the structural analyses built on the
// multipliers (unused constraints, grouped algorithm constraints, recovery of
// an explicit method, backtracking compatibility).

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pepcert/coef.hpp"
#include "pepcert/method.hpp"
#include "pepcert/pep.hpp"
#include "pepcert/sdp.hpp"

namespace pepcert {

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FingerprintMismatch : public CertificateError {
 public:
  using CertificateError::CertificateError;
};

/// Malformed certificate document; `path` locates the offending field.
class CertificateFormatError : public CertificateError {
 public:
  CertificateFormatError(std::string path, const std::string& what)
      : CertificateError(path + ": " + what), path(std::move(path)) {}
  std::string path;
};

struct ToleranceRecord {
  double solver = 1e-8;
  /// Multipliers below zero_threshold * max |lambda| are recorded as zeros.
  double zero_threshold = 1e-7;
  double verify = 1e-7;
  /// Largest denominator tried when rationalizing multipliers.
  long rational_max_denominator = 100000;
};

struct PotentialStepRecord {
  int step = 0;
  std::vector<std::string> atoms;
};

struct Certificate {
  int version = 1;
  std::string fingerprint;
  Coef tau;
  /// Every atom except the initialization atom.
  std::map<std::string, Coef> multipliers;
  ToleranceRecord tolerances;
  /// True when every multiplier is rational and the dual constraints were
  /// checked in exact arithmetic.
  bool exact = false;
  std::string verdict = "UNVERIFIED";
  /// Atoms entering each potential step, when a Lyapunov analysis ran.
  std::vector<PotentialStepRecord> lyapunov;

  /// Multiplier of atom k of `problem` (tau for the initialization atom).
  Coef multiplier(const PepProblem& problem, int k) const;
  Eigen::VectorXd aligned(const PepProblem& problem) const;
};

struct ExtractOptions {
  ToleranceRecord tolerances;
  /// Try rational multipliers (kept only if they verify exactly).
  bool rationalize = true;
};

/// Throws CertificateError when the solution did not converge.
Certificate extract(const PrimalDualSolution& solution, const PepProblem& problem,
                    const ExtractOptions& options = {});

struct VerificationReport {
  double vector_residual = 0.0;
  double min_eig_slack = 0.0;
  std::vector<std::string> sign_violations;
  std::vector<std::string> missing;
  std::vector<std::string> unknown;
  /// Set when the check also ran in exact arithmetic.
  std::optional<bool> exact_pass;
  bool pass = false;

  std::string verdict() const { return pass ? "PASS" : "FAIL"; }
};

/// Recomputes the dual constraints from the problem atoms. Throws
/// FingerprintMismatch when the certificate belongs to another problem.
VerificationReport verify(const Certificate& cert, const PepProblem& problem, double eps);

/// metric - tau * init = sum_k lambda_k * atom_k - <S, G> + offset, with S PSD.
struct ProofChain {
  ScalarExpr lhs;
  std::vector<std::pair<Coef, int>> terms;  ///< (multiplier, atom index), by atom id
  ScalarExpr combination;                   ///< sum of the weighted atoms
  ScalarExpr slack;                         ///< <S, G> as an expression
  /// Squares: slack = sum_k d_k ||sum_j l_kj b_j||^2.
  std::vector<std::pair<Coef, VectorExpr>> squares;

  struct Values {
    double lhs = 0.0;
    double combination = 0.0;
    double slack = 0.0;
  };
  Values evaluate(const Eigen::VectorXd& F, const Eigen::MatrixXd& G) const;
};

ProofChain proof_chain(const Certificate& cert, const PepProblem& problem);

/// Markdown proof. Throws CertificateError if the certificate does not verify.
std::string render_proof(const Certificate& cert, const PepProblem& problem);

struct UnusedReport {
  std::vector<std::string> ids;
  std::string note;
};
UnusedReport unused_constraints(const Certificate& cert, double threshold = 0.0);

/// <g_t, w_t> (sense) 0 combining every algorithm atom at free point t.
struct GroupedConstraint {
  int query = 0;
  std::string display;
  VectorExpr w;
  std::vector<std::string> atoms;
};
std::vector<GroupedConstraint> group_algorithm_constraints(const Certificate& cert, const PepProblem& problem);

/// Solves w_t = 0 for each free point in turn. Throws CertificateError when
/// the weight of x_t in w_t vanishes or x_t would depend on its own gradient.
CoefficientTable recover_explicit_method(const std::vector<GroupedConstraint>& grouped, const MethodSpec& method);

enum class AtomObservability { ParameterFree, Observable, Unobservable };
std::string to_string(AtomObservability kind);

struct BacktrackingReport {
  std::vector<std::pair<std::string, AtomObservability>> used;
  bool compatible = true;
};
BacktrackingReport backtracking_report(const Certificate& cert, const PepProblem& problem);

nlohmann::json to_json(const Certificate& cert);
/// Throws CertificateFormatError.
Certificate certificate_from_json(const nlohmann::json& doc);

/// Smallest-denominator continued-fraction convergent within tol of x.
std::optional<mpq_class> rationalize(double x, double tol, long max_denominator);

/// PSD test by symmetric elimination; nullopt when an entry is not exact.
std::optional<bool> exact_psd(const std::vector<std::vector<Coef>>& S);

}  // namespace pepcert

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

// Batch drivers behind the command line: run every requested analysis of a
// config and render the artifacts.

#pragma once

#include <map>
#include <optional>
#include <string>

#include "pepcert/certificate.hpp"
#include "pepcert/config.hpp"

namespace pepcert {

enum class Outcome { Pass = 0, SchemaError = 1, SolverFailure = 2, VerificationFailure = 3, FingerprintMismatch = 4 };

struct AnalysisResult {
  Outcome outcome = Outcome::Pass;
  std::string summary;
  double tau = 0.0;
  double objective = 0.0;
  std::optional<Certificate> certificate;
  /// File name -> contents (report.md, cert.json, proof.md, ...).
  std::map<std::string, std::string> files;
};

/// `tol` overrides the config's solver tolerance when positive.
AnalysisResult analyze(const ProblemConfig& config, double tol = 0.0);

/// Creates `dir` if needed and writes every artifact. Throws std::runtime_error.
void write_artifacts(const AnalysisResult& result, const std::string& dir);

/// Rebuilds the config's problem and checks the certificate against it.
AnalysisResult verify_certificate(const nlohmann::json& certificate, const ProblemConfig& config);

/// Per-iterate residual polynomial table plus the metric worst case on the
/// quadratic class next to the PEP value. Throws QuadraticError.
std::string quadratic_report(const ProblemConfig& config, std::optional<double> pep_value = std::nullopt);

}  // namespace pepcert

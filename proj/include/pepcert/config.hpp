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

// Problem configuration files (JSON, one problem per document):
//
//   {
//     "class":  {"mu": 0.1, "L": 1},              // L may be "inf"
//     "method": {"name": "gd", "step": "2/11"},   // gd | nag | hb-qg | gdls | gfom | explicit
//     "T": 1,
//     "metric": {"kind": "fval-gap", "at": ["1"]},
//     "init":   {"kind": "distance", "R": 1},
//     "solver": {"tol": 1e-8, "max_iter": 100},
//     "analyses": {"certificate": true, "proof": true, "lyapunov": false,
//                  "quadratic": false, "worst-case-instance": true,
//                  "backtracking-report": false}
//   }
//
// Numbers are read as the decimal they are written as ("0.1" is 1/10);
// strings such as "2/11" are exact rationals.

#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "pepcert/function_class.hpp"
#include "pepcert/method.hpp"
#include "pepcert/pep.hpp"
#include "pepcert/sdp.hpp"

namespace pepcert {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, int column, const std::string& message);

  std::string field;  ///< JSON path, "" for syntax errors
  int line = 0;       ///< 1-based; 0 when unknown
  int column = 0;
};

struct Analyses {
  bool certificate = true;
  bool proof = true;
  bool lyapunov = false;
  bool quadratic = false;
  bool worst_case_instance = true;
  bool backtracking_report = false;
};

struct ProblemConfig {
  FunctionClassSpec cls;
  MethodSpec method;
  nlohmann::json method_doc;
  int T = 1;
  PerformanceMetric metric;
  InitialCondition init;
  SolverOptions solver;
  Analyses analyses;

  PepProblem build() const;
};

/// Throws ConfigError on syntax or schema errors (unknown keys included).
ProblemConfig parse_config(const std::string& text);
ProblemConfig load_config(const std::string& path);

/// Canonical JSON of the parsed config.
nlohmann::json to_json(const ProblemConfig& config);

}  // namespace pepcert

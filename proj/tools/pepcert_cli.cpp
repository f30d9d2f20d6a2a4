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

// pepcert analyze <config> [--out DIR] [--tol X]
// pepcert verify <cert> <config>
// pepcert quadratic <config>
//
// Exit codes: 0 pass, 1 schema error, 2 solver failure, 3 verification
// failure, 4 fingerprint mismatch.

#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "pepcert/pepcert.h"

namespace {

struct ProblemDeleter {
  void operator()(pepcert_problem* p) const { pepcert_problem_free(p); }
};
struct ResultDeleter {
  void operator()(pepcert_result* r) const { pepcert_result_free(r); }
};
using Problem = std::unique_ptr<pepcert_problem, ProblemDeleter>;
using Result = std::unique_ptr<pepcert_result, ResultDeleter>;

// Library statuses above 4 are reported as schema (input) or solver failures.
int exit_code(pepcert_status st) {
  switch (st) {
    case PEPCERT_OK:
    case PEPCERT_ERR_SCHEMA:
    case PEPCERT_ERR_SOLVER:
    case PEPCERT_ERR_VERIFY:
    case PEPCERT_ERR_FINGERPRINT:
      return static_cast<int>(st);
    case PEPCERT_ERR_IO:
    case PEPCERT_ERR_ARGUMENT:
      return 1;
    case PEPCERT_ERR_INTERNAL:
      return 2;
  }
  return 2;
}

int report_error(const char* what, pepcert_status st) {
  std::fprintf(stderr, "pepcert: %s: %s: %s\n", what, pepcert_status_name(st), pepcert_last_error());
  return exit_code(st);
}

int load(const std::string& path, Problem& out) {
  pepcert_problem* raw = nullptr;
  const pepcert_status st = pepcert_problem_load(path.c_str(), &raw);
  out.reset(raw);
  return st == PEPCERT_OK ? 0 : report_error(path.c_str(), st);
}

int run_analyze(const std::string& config, const std::string& dir, double tol) {
  Problem problem;
  if (int rc = load(config, problem)) return rc;
  pepcert_result* raw = nullptr;
  const pepcert_status st = pepcert_analyze(problem.get(), tol, &raw);
  Result result(raw);
  if (!result) return report_error("analyze", st);
  const pepcert_status wst = pepcert_result_write(result.get(), dir.c_str());
  if (wst != PEPCERT_OK) return report_error("write", wst);
  std::printf("%s\n", pepcert_result_summary(result.get()));
  for (size_t i = 0; i < pepcert_result_file_count(result.get()); ++i) {
    std::printf("  %s/%s\n", dir.c_str(), pepcert_result_file_name(result.get(), i));
  }
  if (st != PEPCERT_OK) return report_error("analyze", st);
  return 0;
}

int run_verify(const std::string& cert, const std::string& config) {
  Problem problem;
  if (int rc = load(config, problem)) return rc;
  pepcert_result* raw = nullptr;
  const pepcert_status st = pepcert_verify_file(problem.get(), cert.c_str(), &raw);
  Result result(raw);
  if (!result) return report_error(cert.c_str(), st);
  std::printf("%s\n", pepcert_result_summary(result.get()));
  return exit_code(st);
}

int run_quadratic(const std::string& config) {
  Problem problem;
  if (int rc = load(config, problem)) return rc;
  pepcert_result* raw = nullptr;
  const pepcert_status st = pepcert_quadratic(problem.get(), &raw);
  Result result(raw);
  if (!result) return report_error("quadratic", st);
  std::printf("%s", pepcert_result_file(result.get(), "quadratic.md"));
  return exit_code(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worst-case analysis and convergence certificates for first-order methods"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pepcert_version());

  std::string config, cert, out_dir = "pepcert-out";
  double tol = 0.0;

  auto* analyze = app.add_subcommand("analyze", "Solve, certify and report a problem config");
  analyze->add_option("config", config, "Problem config (JSON)")->required();
  analyze->add_option("--out", out_dir, "Output directory")->capture_default_str();
  analyze->add_option("--tol", tol, "Solver tolerance (overrides the config)")->check(CLI::Range(0.0, 1e-2));

  auto* verify = app.add_subcommand("verify", "Check a certificate against a problem config");
  verify->add_option("cert", cert, "Certificate (JSON)")->required();
  verify->add_option("config", config, "Problem config (JSON)")->required();

  auto* quadratic = app.add_subcommand("quadratic", "Residual polynomial analysis on quadratics");
  quadratic->add_option("config", config, "Problem config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (*analyze) return run_analyze(config, out_dir, tol);
  if (*verify) return run_verify(cert, config);
  return run_quadratic(config);
}

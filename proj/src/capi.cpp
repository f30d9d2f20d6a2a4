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

#include "pepcert/pepcert.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pepcert/analyze.hpp"
#include "pepcert/quadratic.hpp"

struct pepcert_problem {
  pepcert::ProblemConfig config;
  std::string fingerprint;
  int atoms = 0;
  int gram = 0;
};

struct pepcert_result {
  pepcert::AnalysisResult result;
  std::vector<std::string> names;
};

namespace {

thread_local std::string last_error;

pepcert_status fail(pepcert_status status, const std::string& message) {
  last_error = message;
  return status;
}

pepcert_status from_outcome(pepcert::Outcome o) { return static_cast<pepcert_status>(static_cast<int>(o)); }

pepcert_result* wrap(pepcert::AnalysisResult r) {
  auto* out = new pepcert_result{std::move(r), {}};
  for (const auto& [name, body] : out->result.files) out->names.push_back(name);
  return out;
}

template <class F>
pepcert_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const pepcert::ConfigError& e) {
    return fail(PEPCERT_ERR_SCHEMA, e.what());
  } catch (const pepcert::QuadraticError& e) {
    return fail(PEPCERT_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PEPCERT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PEPCERT_ERR_INTERNAL, e.what());
  }
}

pepcert_status finish(pepcert::AnalysisResult r, pepcert_result** out) {
  const pepcert_status st = from_outcome(r.outcome);
  if (st != PEPCERT_OK) last_error = r.summary;
  *out = wrap(std::move(r));
  return st;
}

pepcert_status make_problem(pepcert::ProblemConfig cfg, pepcert_problem** out) {
  const pepcert::PepProblem p = cfg.build();
  *out = new pepcert_problem{std::move(cfg), pepcert::fingerprint(p), p.atom_count(), p.n()};
  return PEPCERT_OK;
}

}  // namespace

extern "C" {

const char* pepcert_version(void) { return "0.1.0"; }

const char* pepcert_last_error(void) { return last_error.c_str(); }

const char* pepcert_status_name(pepcert_status status) {
  switch (status) {
    case PEPCERT_OK:
      return "ok";
    case PEPCERT_ERR_SCHEMA:
      return "schema error";
    case PEPCERT_ERR_SOLVER:
      return "solver failure";
    case PEPCERT_ERR_VERIFY:
      return "verification failure";
    case PEPCERT_ERR_FINGERPRINT:
      return "fingerprint mismatch";
    case PEPCERT_ERR_IO:
      return "i/o error";
    case PEPCERT_ERR_ARGUMENT:
      return "invalid argument";
    case PEPCERT_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown";
}

pepcert_status pepcert_problem_parse(const char* json_text, pepcert_problem** out) {
  if (!json_text || !out) return fail(PEPCERT_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { return make_problem(pepcert::parse_config(json_text), out); });
}

pepcert_status pepcert_problem_load(const char* config_path, pepcert_problem** out) {
  if (!config_path || !out) return fail(PEPCERT_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  std::ifstream in(config_path, std::ios::binary);
  if (!in) return fail(PEPCERT_ERR_IO, std::string("cannot read ") + config_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return guarded([&] { return make_problem(pepcert::parse_config(buf.str()), out); });
}

void pepcert_problem_free(pepcert_problem* problem) { delete problem; }

int pepcert_problem_atom_count(const pepcert_problem* problem) { return problem ? problem->atoms : -1; }

int pepcert_problem_gram_size(const pepcert_problem* problem) { return problem ? problem->gram : -1; }

const char* pepcert_problem_fingerprint(const pepcert_problem* problem) {
  return problem ? problem->fingerprint.c_str() : nullptr;
}

pepcert_status pepcert_analyze(const pepcert_problem* problem, double tol, pepcert_result** out) {
  if (!problem || !out) return fail(PEPCERT_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  if (tol > 1e-2) return fail(PEPCERT_ERR_ARGUMENT, "tol must lie in (0, 1e-2]");
  return guarded([&] { return finish(pepcert::analyze(problem->config, tol), out); });
}

pepcert_status pepcert_result_write(const pepcert_result* result, const char* dir) {
  if (!result || !dir) return fail(PEPCERT_ERR_ARGUMENT, "null argument");
  try {
    pepcert::write_artifacts(result->result, dir);
  } catch (const std::exception& e) {
    return fail(PEPCERT_ERR_IO, e.what());
  }
  return PEPCERT_OK;
}

pepcert_status pepcert_verify(const pepcert_problem* problem, const char* certificate_json, pepcert_result** out) {
  if (!problem || !certificate_json || !out) return fail(PEPCERT_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(certificate_json);
  } catch (const nlohmann::json::parse_error& e) {
    return fail(PEPCERT_ERR_SCHEMA, std::string("certificate: ") + e.what());
  }
  return guarded([&] { return finish(pepcert::verify_certificate(doc, problem->config), out); });
}

pepcert_status pepcert_verify_file(const pepcert_problem* problem, const char* certificate_path,
                                   pepcert_result** out) {
  if (!problem || !certificate_path || !out) return fail(PEPCERT_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  std::ifstream in(certificate_path, std::ios::binary);
  if (!in) return fail(PEPCERT_ERR_IO, std::string("cannot read ") + certificate_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return pepcert_verify(problem, buf.str().c_str(), out);
}

pepcert_status pepcert_quadratic(const pepcert_problem* problem, pepcert_result** out) {
  if (!problem || !out) return fail(PEPCERT_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    pepcert::AnalysisResult r;
    r.files["quadratic.md"] = pepcert::quadratic_report(problem->config);
    r.summary = r.files["quadratic.md"];
    return finish(std::move(r), out);
  });
}

void pepcert_result_free(pepcert_result* result) { delete result; }

pepcert_status pepcert_result_status(const pepcert_result* result) {
  return result ? from_outcome(result->result.outcome) : PEPCERT_ERR_ARGUMENT;
}

double pepcert_result_tau(const pepcert_result* result) { return result ? result->result.tau : 0.0; }

double pepcert_result_objective(const pepcert_result* result) { return result ? result->result.objective : 0.0; }

const char* pepcert_result_summary(const pepcert_result* result) {
  return result ? result->result.summary.c_str() : nullptr;
}

const char* pepcert_result_file(const pepcert_result* result, const char* name) {
  if (!result || !name) return nullptr;
  auto it = result->result.files.find(name);
  return it == result->result.files.end() ? nullptr : it->second.c_str();
}

size_t pepcert_result_file_count(const pepcert_result* result) { return result ? result->names.size() : 0; }

const char* pepcert_result_file_name(const pepcert_result* result, size_t index) {
  if (!result || index >= result->names.size()) return nullptr;
  return result->names[index].c_str();
}

}  // extern "C"

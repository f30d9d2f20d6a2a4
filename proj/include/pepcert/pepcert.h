/* Copyright 2026 The pepcert Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of libpepcert_c. Handles are opaque; every call that can fail
 * returns a pepcert_status and leaves a message in pepcert_last_error()
 * (per thread). Strings returned by accessors live as long as their handle. */

#ifndef PEPCERT_PEPCERT_H_
#define PEPCERT_PEPCERT_H_

#include <stddef.h>

#if defined(PEPCERT_BUILDING)
#define PEPCERT_API __attribute__((visibility("default")))
#else
#define PEPCERT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values 0..4 double as command-line exit codes. */
typedef enum {
  PEPCERT_OK = 0,
  PEPCERT_ERR_SCHEMA = 1,
  PEPCERT_ERR_SOLVER = 2,
  PEPCERT_ERR_VERIFY = 3,
  PEPCERT_ERR_FINGERPRINT = 4,
  PEPCERT_ERR_IO = 5,
  PEPCERT_ERR_ARGUMENT = 6,
  PEPCERT_ERR_INTERNAL = 7
} pepcert_status;

typedef struct pepcert_problem pepcert_problem;
typedef struct pepcert_result pepcert_result;

PEPCERT_API const char* pepcert_version(void);
PEPCERT_API const char* pepcert_last_error(void);
PEPCERT_API const char* pepcert_status_name(pepcert_status status);

/* Problems from a config document or file. */
PEPCERT_API pepcert_status pepcert_problem_parse(const char* json_text, pepcert_problem** out);
PEPCERT_API pepcert_status pepcert_problem_load(const char* config_path, pepcert_problem** out);
PEPCERT_API void pepcert_problem_free(pepcert_problem* problem);
PEPCERT_API int pepcert_problem_atom_count(const pepcert_problem* problem);
PEPCERT_API int pepcert_problem_gram_size(const pepcert_problem* problem);
PEPCERT_API const char* pepcert_problem_fingerprint(const pepcert_problem* problem);

/* Full analysis: solve, extract and verify a certificate, render artifacts.
 * tol <= 0 keeps the config's tolerance. The returned status classifies the
 * outcome; *out is set whenever the analysis ran (even if it failed). */
PEPCERT_API pepcert_status pepcert_analyze(const pepcert_problem* problem, double tol, pepcert_result** out);
/* Writes every artifact of a result into dir (created if needed). */
PEPCERT_API pepcert_status pepcert_result_write(const pepcert_result* result, const char* dir);

/* Checks a certificate document against a problem. */
PEPCERT_API pepcert_status pepcert_verify(const pepcert_problem* problem, const char* certificate_json,
                                          pepcert_result** out);
PEPCERT_API pepcert_status pepcert_verify_file(const pepcert_problem* problem, const char* certificate_path,
                                               pepcert_result** out);

/* Residual polynomial report on the quadratic class. */
PEPCERT_API pepcert_status pepcert_quadratic(const pepcert_problem* problem, pepcert_result** out);

PEPCERT_API void pepcert_result_free(pepcert_result* result);
PEPCERT_API pepcert_status pepcert_result_status(const pepcert_result* result);
PEPCERT_API double pepcert_result_tau(const pepcert_result* result);
PEPCERT_API double pepcert_result_objective(const pepcert_result* result);
PEPCERT_API const char* pepcert_result_summary(const pepcert_result* result);
/* Artifact by file name ("report.md", "cert.json", ...); NULL if absent. */
PEPCERT_API const char* pepcert_result_file(const pepcert_result* result, const char* name);
PEPCERT_API size_t pepcert_result_file_count(const pepcert_result* result);
PEPCERT_API const char* pepcert_result_file_name(const pepcert_result* result, size_t index);

#ifdef __cplusplus
}
#endif

#endif /* PEPCERT_PEPCERT_H_ */

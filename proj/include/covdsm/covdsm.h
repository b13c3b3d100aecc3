/*
 * Copyright 2026 The covdsm Authors
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
#ifndef COVDSM_COVDSM_H
#define COVDSM_COVDSM_H

/* C interface of the covdsm library. Every function returns a status code;
 * on failure covdsm_last_error() describes the problem for the calling
 * thread. Strings handed out through char** parameters are owned by the
 * caller and must be released with covdsm_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define COVDSM_API __declspec(dllexport)
#else
#define COVDSM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum covdsm_status {
  COVDSM_OK = 0,
  COVDSM_ERR_INVALID_ARGUMENT = 1,
  COVDSM_ERR_CONFIG = 2,
  COVDSM_ERR_ASSERTION = 3,
  COVDSM_ERR_IO = 4,
  COVDSM_ERR_CAPACITY = 5,
  COVDSM_ERR_INTERNAL = 6
} covdsm_status;

typedef struct covdsm_run covdsm_run;

COVDSM_API const char* covdsm_version(void);
COVDSM_API const char* covdsm_status_name(covdsm_status status);
/* Message of the most recent failure on this thread; empty if none. */
COVDSM_API const char* covdsm_last_error(void);
COVDSM_API void covdsm_string_free(char* s);

/* JSON arrays of names. */
COVDSM_API covdsm_status covdsm_list_problems(char** out_json);
COVDSM_API covdsm_status covdsm_list_presets(char** out_json);
COVDSM_API covdsm_status covdsm_preset_text(const char* name, char** out_json);

/* Builds a normalized run configuration. The base is the preset, else the
 * config file (a run manifest is accepted), else the defaults. A non-null
 * problem replaces the base problem; the start point then falls back to the
 * new problem's default unless the problem is unchanged. has_seed != 0
 * overrides the seed. */
COVDSM_API covdsm_status covdsm_resolve_config(const char* preset, const char* config_path,
                                               const char* problem, int has_seed,
                                               uint64_t seed, char** out_config_json);

/* Runs the solver to termination. */
COVDSM_API covdsm_status covdsm_run_create(const char* config_json, covdsm_run** out_run);
COVDSM_API void covdsm_run_destroy(covdsm_run* run);

/* Writes trace.jsonl, summary.json, curves.csv and manifest.json. */
COVDSM_API covdsm_status covdsm_run_write(const covdsm_run* run, const char* out_dir);
COVDSM_API covdsm_status covdsm_run_summary_json(const covdsm_run* run, char** out_json);
COVDSM_API covdsm_status covdsm_run_trace_jsonl(const covdsm_run* run, char** out_text);
COVDSM_API covdsm_status covdsm_run_iterations(const covdsm_run* run, size_t* out_count);
COVDSM_API covdsm_status covdsm_run_unique_evaluations(const covdsm_run* run, size_t* out_count);
COVDSM_API covdsm_status covdsm_run_final_value(const covdsm_run* run, double* out_value);
/* Continuity-set index of the final incumbent (0 outside the domain). */
COVDSM_API covdsm_status covdsm_run_final_set(const covdsm_run* run, int* out_set);
/* Copies the final incumbent; *out_dim receives the dimension even when
 * capacity is too small (then COVDSM_ERR_CAPACITY is returned). */
COVDSM_API covdsm_status covdsm_run_final_point(const covdsm_run* run, double* out, size_t capacity,
                                                size_t* out_dim);
COVDSM_API covdsm_status covdsm_run_termination(const covdsm_run* run, char** out_name);

/* Matched-seed cDSM versus DSM replications. out_dir may be null to skip
 * artifacts. Returns the aggregate table as CSV text. */
COVDSM_API covdsm_status covdsm_bench(const char* config_json, size_t replications,
                                      const char* out_dir, char** out_aggregate_csv);

/* Empirical ratio check of a covering oracle given as JSON. The report is
 * JSON with min_ratio, declared_beta and per-threshold counts; *out_pass is
 * set to 1 when min_ratio >= declared_beta - tolerance. */
COVDSM_API covdsm_status covdsm_verify_oracle(const char* oracle_json, size_t dimension,
                                              size_t trials, uint64_t seed, double tolerance,
                                              char** out_report_json, int* out_pass);

/* Replays the quadrant-cycling counterexample. *out_text receives the
 * printed table; *out_pass is 1 when every closed-form check holds. */
COVDSM_API covdsm_status covdsm_replay_example41(char** out_text, int* out_pass);

#ifdef __cplusplus
}
#endif

#endif /* COVDSM_COVDSM_H */

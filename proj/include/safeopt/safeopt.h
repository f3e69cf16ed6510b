// Copyright 2026 The safeopt Authors
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

/* C interface to the safe global optimization toolkit.
 *
 * Handles are opaque. Every call that can fail returns an sgo_status; the
 * message of the most recent failure on the calling thread is available
 * from sgo_last_error(). Strings returned through char** are owned by the
 * caller and must be released with sgo_string_free(). */
#ifndef SAFEOPT_SAFEOPT_H_
#define SAFEOPT_SAFEOPT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SGO_API __declspec(dllexport)
#else
#define SGO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sgo_status {
  SGO_OK = 0,
  SGO_ERR_INPUT = 1,
  SGO_ERR_CONFIG = 2,
  SGO_ERR_SAFETY = 3,
  SGO_ERR_DOMAIN = 4,
  SGO_ERR_STATE = 5,
  SGO_ERR_INCONSISTENT = 6,
  SGO_ERR_NULL = 7,
  SGO_ERR_INTERNAL = 8
} sgo_status;

typedef struct sgo_config sgo_config;
typedef struct sgo_result sgo_result;

SGO_API const char* sgo_version(void);
SGO_API const char* sgo_last_error(void);
SGO_API void sgo_string_free(char* s);

SGO_API sgo_status sgo_config_new(sgo_config** out);
SGO_API sgo_status sgo_config_from_json(const char* json, sgo_config** out);
SGO_API sgo_status sgo_config_load(const char* path, sgo_config** out);
SGO_API sgo_status sgo_config_to_json(const sgo_config* cfg, char** out);
SGO_API void sgo_config_free(sgo_config* cfg);

SGO_API sgo_status sgo_config_set_problem(sgo_config* cfg, int id);
/* has_threshold = 0 leaves the threshold to h / h_frac. */
SGO_API sgo_status sgo_config_set_inline_problem(sgo_config* cfg, const char* expression,
                                                 double a, double b, double lipschitz,
                                                 double threshold, int has_threshold);
SGO_API sgo_status sgo_config_set_noise(sgo_config* cfg, const char* kind);
SGO_API sgo_status sgo_config_set_seed(sgo_config* cfg, uint64_t seed);
SGO_API sgo_status sgo_config_set_delta(sgo_config* cfg, double delta);
SGO_API sgo_status sgo_config_set_delta_frac(sgo_config* cfg, double frac);
SGO_API sgo_status sgo_config_set_h(sgo_config* cfg, double h);
SGO_API sgo_status sgo_config_set_h_frac(sgo_config* cfg, double frac);
SGO_API sgo_status sgo_config_set_nu(sgo_config* cfg, int nu);
SGO_API sgo_status sgo_config_set_sigma_frac(sgo_config* cfg, double frac);
SGO_API sgo_status sgo_config_set_eps_expand(sgo_config* cfg, double eps);
SGO_API sgo_status sgo_config_set_eps_max(sgo_config* cfg, double eps);
/* n = 0 selects automatic initial point choice. */
SGO_API sgo_status sgo_config_set_init_points(sgo_config* cfg, const double* xs, size_t n);
SGO_API sgo_status sgo_config_set_parallel_subregions(sgo_config* cfg, int on);
SGO_API sgo_status sgo_config_set_timing(sgo_config* cfg, int on);
SGO_API sgo_status sgo_config_set_trace_path(sgo_config* cfg, const char* path);
SGO_API sgo_status sgo_config_set_report_path(sgo_config* cfg, const char* path);

SGO_API sgo_status sgo_run(const sgo_config* cfg, sgo_result** out);
SGO_API void sgo_result_free(sgo_result* res);

SGO_API sgo_status sgo_result_report_json(const sgo_result* res, char** out);
SGO_API sgo_status sgo_result_trace_jsonl(const sgo_result* res, char** out);
SGO_API sgo_status sgo_result_plot_json(const sgo_result* res, char** out);
SGO_API sgo_status sgo_result_counts(const sgo_result* res, int* se_points, int* se_evals,
                                     int* gm_points, int* gm_evals);
SGO_API sgo_status sgo_result_best(const sgo_result* res, double* x, double* g);
SGO_API sgo_status sgo_result_violations(const sgo_result* res, int* count);

SGO_API sgo_status sgo_bench(const sgo_config* base, const int* problems, size_t n_problems,
                             const uint64_t* seeds, size_t n_seeds, int jobs, int with_iqr,
                             char** csv_out);
SGO_API sgo_status sgo_export_plot(const char* trace_jsonl, const char* report_json,
                                   char** out);

#ifdef __cplusplus
}
#endif

#endif /* SAFEOPT_SAFEOPT_H_ */

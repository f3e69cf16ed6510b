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

#include "safeopt/safeopt.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "safeopt/errors.hpp"
#include "safeopt/harness.hpp"

struct sgo_config {
  safeopt::RunConfig config;
};

struct sgo_result {
  safeopt::RunOutcome outcome;
};

namespace {

thread_local std::string g_last_error;

sgo_status fail(sgo_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
sgo_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SGO_OK;
  } catch (const safeopt::ConfigError& e) {
    return fail(SGO_ERR_CONFIG, e.what());
  } catch (const safeopt::SafetyViolationError& e) {
    return fail(SGO_ERR_SAFETY, e.what());
  } catch (const safeopt::DomainError& e) {
    return fail(SGO_ERR_DOMAIN, e.what());
  } catch (const safeopt::InputError& e) {
    return fail(SGO_ERR_INPUT, e.what());
  } catch (const safeopt::StateError& e) {
    return fail(SGO_ERR_STATE, e.what());
  } catch (const safeopt::InconsistencyError& e) {
    return fail(SGO_ERR_INCONSISTENT, e.what());
  } catch (const std::exception& e) {
    return fail(SGO_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SGO_ERR_INTERNAL, "unknown error");
  }
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename Fn>
sgo_status set(sgo_config* cfg, Fn&& fn) {
  if (!cfg) return fail(SGO_ERR_NULL, "null config handle");
  return guard([&] { fn(cfg->config); });
}

}  // namespace

extern "C" {

const char* sgo_version(void) { return "0.1.0"; }

const char* sgo_last_error(void) { return g_last_error.c_str(); }

void sgo_string_free(char* s) { std::free(s); }

sgo_status sgo_config_new(sgo_config** out) {
  if (!out) return fail(SGO_ERR_NULL, "null output pointer");
  return guard([&] { *out = new sgo_config{}; });
}

sgo_status sgo_config_from_json(const char* json, sgo_config** out) {
  if (!json || !out) return fail(SGO_ERR_NULL, "null argument");
  return guard([&] { *out = new sgo_config{safeopt::config_from_json(json)}; });
}

sgo_status sgo_config_load(const char* path, sgo_config** out) {
  if (!path || !out) return fail(SGO_ERR_NULL, "null argument");
  return guard([&] { *out = new sgo_config{safeopt::load_config(path)}; });
}

sgo_status sgo_config_to_json(const sgo_config* cfg, char** out) {
  if (!cfg || !out) return fail(SGO_ERR_NULL, "null argument");
  return guard([&] { *out = copy_out(safeopt::config_to_json(cfg->config)); });
}

void sgo_config_free(sgo_config* cfg) { delete cfg; }

sgo_status sgo_config_set_problem(sgo_config* cfg, int id) {
  return set(cfg, [&](safeopt::RunConfig& c) {
    c.problem_id = id;
    c.inline_problem.reset();
  });
}

sgo_status sgo_config_set_inline_problem(sgo_config* cfg, const char* expression, double a,
                                         double b, double lipschitz, double threshold,
                                         int has_threshold) {
  if (!expression) return fail(SGO_ERR_NULL, "null expression");
  return set(cfg, [&](safeopt::RunConfig& c) {
    safeopt::InlineProblem q;
    q.expression = expression;
    q.a = a;
    q.b = b;
    q.lipschitz = lipschitz;
    if (has_threshold) q.threshold = threshold;
    c.inline_problem = q;
    c.problem_id.reset();
  });
}

sgo_status sgo_config_set_noise(sgo_config* cfg, const char* kind) {
  if (!kind) return fail(SGO_ERR_NULL, "null noise kind");
  return set(cfg, [&](safeopt::RunConfig& c) {
    try {
      c.noise = safeopt::noise_kind_from_string(kind);
    } catch (const safeopt::InputError& e) {
      throw safeopt::ConfigError(e.what());
    }
  });
}

sgo_status sgo_config_set_seed(sgo_config* cfg, uint64_t seed) {
  return set(cfg, [&](safeopt::RunConfig& c) { c.seed = seed; });
}

sgo_status sgo_config_set_delta(sgo_config* cfg, double delta) {
  return set(cfg, [&](safeopt::RunConfig& c) { c.delta = delta; });
}

sgo_status sgo_config_set_delta_frac(sgo_config* cfg, double frac) {
  return set(cfg, [&](safeopt::RunConfig& c) {
    c.delta.reset();
    c.delta_frac = frac;
  });
}

sgo_status sgo_config_set_h(sgo_config* cfg, double h) {
  return set(cfg, [&](safeopt::RunConfig& c) {
    c.h = h;
    c.h_frac.reset();
  });
}

sgo_status sgo_config_set_h_frac(sgo_config* cfg, double frac) {
  return set(cfg, [&](safeopt::RunConfig& c) {
    c.h.reset();
    c.h_frac = frac;
  });
}

sgo_status sgo_config_set_nu(sgo_config* cfg, int nu) {
  return set(cfg, [&](safeopt::RunConfig& c) { c.nu = nu; });
}

sgo_status sgo_config_set_sigma_frac(sgo_config* cfg, double frac) {
  return set(cfg, [&](safeopt::RunConfig& c) { c.sigma_frac = frac; });
}

sgo_status sgo_config_set_eps_expand(sgo_config* cfg, double eps) {
  return set(cfg, [&](safeopt::RunConfig& c) { c.eps_expand = eps; });
}

sgo_status sgo_config_set_eps_max(sgo_config* cfg, double eps) {
  return set(cfg, [&](safeopt::RunConfig& c) { c.eps_max = eps; });
}

sgo_status sgo_config_set_init_points(sgo_config* cfg, const double* xs, size_t n) {
  if (n > 0 && !xs) return fail(SGO_ERR_NULL, "null point array");
  return set(cfg, [&](safeopt::RunConfig& c) { c.init_points.assign(xs, xs + n); });
}

sgo_status sgo_config_set_parallel_subregions(sgo_config* cfg, int on) {
  return set(cfg, [&](safeopt::RunConfig& c) { c.parallel_subregions = on != 0; });
}

sgo_status sgo_config_set_timing(sgo_config* cfg, int on) {
  return set(cfg, [&](safeopt::RunConfig& c) { c.timing = on != 0; });
}

sgo_status sgo_config_set_trace_path(sgo_config* cfg, const char* path) {
  return set(cfg, [&](safeopt::RunConfig& c) { c.trace_path = path ? path : ""; });
}

sgo_status sgo_config_set_report_path(sgo_config* cfg, const char* path) {
  return set(cfg, [&](safeopt::RunConfig& c) { c.report_path = path ? path : ""; });
}

sgo_status sgo_run(const sgo_config* cfg, sgo_result** out) {
  if (!cfg || !out) return fail(SGO_ERR_NULL, "null argument");
  return guard([&] { *out = new sgo_result{safeopt::run(cfg->config)}; });
}

void sgo_result_free(sgo_result* res) { delete res; }

sgo_status sgo_result_report_json(const sgo_result* res, char** out) {
  if (!res || !out) return fail(SGO_ERR_NULL, "null argument");
  return guard([&] { *out = copy_out(safeopt::report_to_json(res->outcome.report)); });
}

sgo_status sgo_result_trace_jsonl(const sgo_result* res, char** out) {
  if (!res || !out) return fail(SGO_ERR_NULL, "null argument");
  return guard([&] { *out = copy_out(safeopt::trace_to_jsonl(res->outcome.trace)); });
}

sgo_status sgo_result_plot_json(const sgo_result* res, char** out) {
  if (!res || !out) return fail(SGO_ERR_NULL, "null argument");
  return guard([&] {
    *out = copy_out(safeopt::export_plot_data(res->outcome.trace, res->outcome.report));
  });
}

sgo_status sgo_result_counts(const sgo_result* res, int* se_points, int* se_evals,
                             int* gm_points, int* gm_evals) {
  if (!res) return fail(SGO_ERR_NULL, "null result handle");
  const safeopt::RunReport& r = res->outcome.report;
  if (se_points) *se_points = r.phase1.points;
  if (se_evals) *se_evals = r.phase1.evaluations;
  if (gm_points) *gm_points = r.phase2.points;
  if (gm_evals) *gm_evals = r.phase2.evaluations;
  return SGO_OK;
}

sgo_status sgo_result_best(const sgo_result* res, double* x, double* g) {
  if (!res) return fail(SGO_ERR_NULL, "null result handle");
  if (x) *x = res->outcome.report.x_star;
  if (g) *g = res->outcome.report.g_star;
  return SGO_OK;
}

sgo_status sgo_result_violations(const sgo_result* res, int* count) {
  if (!res || !count) return fail(SGO_ERR_NULL, "null argument");
  *count = res->outcome.report.violations;
  return SGO_OK;
}

sgo_status sgo_bench(const sgo_config* base, const int* problems, size_t n_problems,
                     const uint64_t* seeds, size_t n_seeds, int jobs, int with_iqr,
                     char** csv_out) {
  if (!base || !csv_out) return fail(SGO_ERR_NULL, "null argument");
  if ((n_problems && !problems) || (n_seeds && !seeds)) return fail(SGO_ERR_NULL, "null array");
  return guard([&] {
    const std::vector<int> ids(problems, problems + n_problems);
    const std::vector<std::uint64_t> s(seeds, seeds + n_seeds);
    const auto rows = safeopt::bench(ids, s, base->config, jobs);
    *csv_out = copy_out(safeopt::bench_csv(rows, with_iqr != 0));
  });
}

sgo_status sgo_export_plot(const char* trace_jsonl, const char* report_json, char** out) {
  if (!trace_jsonl || !report_json || !out) return fail(SGO_ERR_NULL, "null argument");
  return guard([&] {
    const auto trace = safeopt::trace_from_jsonl(trace_jsonl);
    const auto report = safeopt::report_from_json(report_json);
    *out = copy_out(safeopt::export_plot_data(trace, report));
  });
}

}  // extern "C"

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

// Exercises the shared library through its C interface only.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "safeopt/safeopt.h"

namespace {

int failures = 0;

void expect(bool ok, const char* what) {
  if (!ok) {
    std::printf("FAIL %s (%s)\n", what, sgo_last_error());
    ++failures;
  }
}

}  // namespace

int main() {
  sgo_config* cfg = nullptr;
  expect(sgo_config_new(&cfg) == SGO_OK, "config_new");
  expect(sgo_config_set_problem(cfg, 3) == SGO_OK, "set_problem");
  expect(sgo_config_set_seed(cfg, 7) == SGO_OK, "set_seed");
  expect(sgo_config_set_noise(cfg, "uniform") == SGO_OK, "set_noise");
  expect(sgo_config_set_noise(cfg, "pink") == SGO_ERR_CONFIG, "bad noise is a config error");
  expect(std::strlen(sgo_last_error()) > 0, "error message is kept");

  sgo_result* res = nullptr;
  expect(sgo_run(cfg, &res) == SGO_OK, "run");
  int sp = 0, se = 0, gp = 0, ge = 0, violations = -1;
  expect(sgo_result_counts(res, &sp, &se, &gp, &ge) == SGO_OK, "counts");
  expect(se >= sp && ge >= gp && sp > 0, "evaluations cover points");
  expect(sgo_result_violations(res, &violations) == SGO_OK && violations == 0, "no violations");
  double x = 0, g = 0;
  expect(sgo_result_best(res, &x, &g) == SGO_OK && x >= 0.0 && x <= 6.5, "best in domain");

  char* report = nullptr;
  char* trace = nullptr;
  char* plot = nullptr;
  char* plot2 = nullptr;
  expect(sgo_result_report_json(res, &report) == SGO_OK, "report");
  expect(sgo_result_trace_jsonl(res, &trace) == SGO_OK, "trace");
  expect(sgo_result_plot_json(res, &plot) == SGO_OK, "plot");
  expect(sgo_export_plot(trace, report, &plot2) == SGO_OK, "export");
  expect(plot && plot2 && std::strcmp(plot, plot2) == 0, "export matches direct bundle");
  int lines = 0;
  for (const char* p = trace; *p; ++p) lines += *p == '\n';
  expect(lines == se + ge, "one trace line per evaluation");
  sgo_string_free(report);
  sgo_string_free(trace);
  sgo_string_free(plot);
  sgo_string_free(plot2);
  sgo_result_free(res);

  char* json = nullptr;
  expect(sgo_config_to_json(cfg, &json) == SGO_OK, "config to json");
  sgo_config* again = nullptr;
  expect(sgo_config_from_json(json, &again) == SGO_OK, "config from json");
  char* json2 = nullptr;
  expect(sgo_config_to_json(again, &json2) == SGO_OK && std::strcmp(json, json2) == 0,
         "config round trip");
  sgo_string_free(json);
  sgo_string_free(json2);
  sgo_config_free(again);

  const int problems[] = {1, 3};
  const uint64_t seeds[] = {1, 2};
  char* csv = nullptr;
  expect(sgo_bench(cfg, problems, 2, seeds, 2, 2, 0, &csv) == SGO_OK, "bench");
  expect(csv && std::string(csv).rfind("problem,se_points", 0) == 0, "bench header");
  sgo_string_free(csv);
  expect(sgo_bench(cfg, problems, 2, seeds, 0, 1, 0, &csv) == SGO_ERR_INPUT, "empty seeds");

  expect(sgo_config_set_problem(cfg, 99) == SGO_OK, "set bad problem");
  res = nullptr;
  expect(sgo_run(cfg, &res) == SGO_ERR_CONFIG && res == nullptr, "bad problem is a config error");

  expect(sgo_config_set_inline_problem(cfg, "1 - abs(x - 0.5)", 0, 1, 1, 0, 0) == SGO_OK,
         "inline");
  expect(sgo_config_set_h(cfg, 0.6) == SGO_OK, "set_h");
  const double init[] = {0.5};
  expect(sgo_config_set_init_points(cfg, init, 1) == SGO_OK, "init points");
  expect(sgo_run(cfg, &res) == SGO_OK, "inline run");
  expect(sgo_result_best(res, &x, &g) == SGO_OK && std::abs(x - 0.5) < 0.1, "inline best");
  sgo_result_free(res);

  expect(sgo_run(nullptr, &res) == SGO_ERR_NULL, "null config");
  sgo_config_free(cfg);

  std::printf("%s\n", failures == 0 ? "capi: all checks passed" : "capi: failures");
  return failures == 0 ? 0 : 1;
}

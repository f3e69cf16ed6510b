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

#ifndef SAFEOPT_HARNESS_HPP_
#define SAFEOPT_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "safeopt/expansion.hpp"
#include "safeopt/global_max.hpp"
#include "safeopt/oracle.hpp"
#include "safeopt/problem.hpp"

namespace safeopt {

struct InlineProblem {
  std::string expression;
  double a = 0.0;
  double b = 1.0;
  double lipschitz = 1.0;
  std::optional<double> threshold;
  std::string name;

  friend bool operator==(const InlineProblem&, const InlineProblem&) = default;
};

// Everything needed to reproduce one run. Unset optionals fall back to the
// catalog entry or to the fraction fields.
struct RunConfig {
  std::optional<int> problem_id;
  std::optional<InlineProblem> inline_problem;

  NoiseKind noise = NoiseKind::kUniform;
  double gaussian_sigma_fraction = 0.5;
  std::uint64_t seed = 0;

  std::optional<double> delta;
  double delta_frac = 0.1;
  std::optional<double> h;
  std::optional<double> h_frac;

  int nu = 15;
  double sigma_frac = 0.10;
  double eps_expand = 1e-3;
  double eps_max = 1e-3;

  // Empty means pick one point from the grid of clearly safe coordinates.
  std::vector<double> init_points;
  double init_margin_frac = 0.05;

  bool parallel_subregions = false;
  bool timing = false;
  int grid_points = 100000;

  std::string trace_path;
  std::string report_path;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string config_to_json(const RunConfig& config);
RunConfig config_from_json(std::string_view text);
RunConfig load_config(const std::string& path);

// A config with every derived quantity filled in.
struct ResolvedRun {
  Problem problem;
  NoiseModel noise;
  std::uint64_t seed = 0;
  double range_min = 0.0;
  double range_max = 0.0;
  ExpansionParams expansion;
  MaxParams maximization;
  std::vector<double> init_points;
};

ResolvedRun resolve(const RunConfig& config);

struct PhaseCounts {
  int points = 0;
  int evaluations = 0;
};

struct SideReport {
  double coordinate = 0.0;
  std::string stop;
  int moves = 0;
};

struct RegionReport {
  Interval interval;
  std::vector<double> origins;
  SideReport left;
  SideReport right;
  bool no_expansion = false;
};

struct SubregionReport {
  Interval interval;
  std::string stop;
  int iterations = 0;
  int accepted = 0;
  std::vector<Anchor> majorant_anchors;
};

struct RunReport {
  RunConfig config;
  int problem_id = 0;
  std::string problem_name;
  double a = 0.0;
  double b = 0.0;
  double lipschitz = 0.0;
  double delta = 0.0;
  double h = 0.0;
  std::vector<double> init_points;

  std::vector<Interval> safe_region;
  std::vector<RegionReport> regions;
  int expansion_iterations = 0;
  std::vector<Anchor> minorant_anchors;
  std::vector<SubregionReport> subregions;

  PhaseCounts phase1;
  PhaseCounts phase2;
  PhaseCounts total;

  double x_star = 0.0;
  double g_star = 0.0;
  std::vector<Interval> n_g;
  std::vector<Interval> n_f;

  int violations = 0;
  std::int64_t wall_time_ns = 0;
};

struct RunOutcome {
  ResolvedRun resolved;
  RunReport report;
  ExpansionResult expansion;
  MaxResult maximization;
  SampleLog log;
  std::vector<TraceRecord> trace;
};

// Runs both phases. Trace and report files are written when the paths in the
// config are nonempty. Throws SafetyViolationError if the sentinel fires.
RunOutcome run(const RunConfig& config, const SelectionObserver& observer = {});

std::string report_to_json(const RunReport& report);
RunReport report_from_json(std::string_view text);

std::string trace_line(const TraceRecord& record);
std::string trace_to_jsonl(std::span<const TraceRecord> trace);
std::vector<TraceRecord> trace_from_jsonl(std::string_view text);

PhaseCounts count_phase(std::span<const TraceRecord> trace, Phase phase);

struct BenchStat {
  double median = 0.0;
  double iqr = 0.0;
};

struct BenchRow {
  int problem = 0;
  BenchStat se_points;
  BenchStat se_evals;
  BenchStat gm_points;
  BenchStat gm_evals;
  BenchStat total_points;
  BenchStat total_evals;
  int runs = 0;
  int violations = 0;
};

// One row per problem; runs are spread over `jobs` threads.
std::vector<BenchRow> bench(std::span<const int> problems, std::span<const std::uint64_t> seeds,
                            const RunConfig& base, int jobs = 1);

std::string bench_csv(std::span<const BenchRow> rows, bool with_iqr = false);

BenchStat median_iqr(std::vector<double> values);

// Redraw data for the two phase figures, as JSON.
std::string export_plot_data(std::span<const TraceRecord> trace, const RunReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace safeopt

#endif  // SAFEOPT_HARNESS_HPP_

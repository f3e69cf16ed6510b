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

// Command line front end. Talks to the library only through the C interface.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "safeopt/safeopt.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSafety = 3;

struct ConfigDeleter {
  void operator()(sgo_config* c) const { sgo_config_free(c); }
};
struct ResultDeleter {
  void operator()(sgo_result* r) const { sgo_result_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { sgo_string_free(s); }
};
using ConfigPtr = std::unique_ptr<sgo_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<sgo_result, ResultDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Failure {
  sgo_status status;
  std::string message;
};

void check(sgo_status status) {
  if (status != SGO_OK) throw Failure{status, sgo_last_error()};
}

int exit_code(sgo_status status) {
  switch (status) {
    case SGO_ERR_CONFIG:
      return kExitConfig;
    case SGO_ERR_SAFETY:
      return kExitSafety;
    default:
      return kExitFailure;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{SGO_ERR_CONFIG, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const char* text) {
  if (path.empty()) {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{SGO_ERR_INPUT, "cannot write '" + path + "'"};
  out << text;
}

// Options shared by run and bench. Only flags given on the command line
// override the config file.
struct AlgoFlags {
  std::string config_file;
  int problem = 0;
  std::uint64_t seed = 0;
  std::string noise;
  double delta = 0, delta_frac = 0, h = 0, h_frac = 0;
  int nu = 0;
  double sigma_frac = 0, eps_expand = 0, eps_max = 0;
  std::vector<std::string> init_points;
  bool parallel = false;
  bool timing = false;

  std::vector<CLI::Option*> opts;
  CLI::Option *o_problem, *o_seed, *o_noise, *o_delta, *o_delta_frac, *o_h, *o_h_frac, *o_nu,
      *o_sigma, *o_eps_expand, *o_eps_max, *o_init, *o_parallel, *o_timing;

  void attach(CLI::App* app, bool with_problem) {
    // -h would collide with the threshold flag.
    app->set_help_flag("--help", "print this help and exit");
    app->add_option("--config", config_file, "JSON config file")->check(CLI::ExistingFile);
    o_problem = with_problem ? app->add_option("--problem", problem, "catalog problem id (1-18)")
                             : nullptr;
    o_seed = with_problem ? app->add_option("--seed", seed, "random seed") : nullptr;
    o_noise = app->add_option("--noise", noise,
                              "zero, uniform, clipped-gaussian, fixed-bias-plus, "
                              "fixed-bias-minus, alternating-bias");
    o_delta = app->add_option("--delta", delta, "absolute noise bound");
    o_delta_frac = app->add_option("--delta-frac", delta_frac, "noise bound as a range fraction");
    o_h = app->add_option("--h", h, "absolute safety threshold");
    o_h_frac = app->add_option("--h-frac", h_frac, "threshold as min + frac * range");
    o_nu = app->add_option("--nu", nu, "repetition budget");
    o_sigma = app->add_option("--sigma-frac", sigma_frac, "tolerance slack fraction of 2*delta");
    o_eps_expand = app->add_option("--eps-expand", eps_expand, "minimum expansion step");
    o_eps_max = app->add_option("--eps-max", eps_max, "maximization accuracy");
    o_init = app->add_option("--init-points", init_points, "'auto' or a list of coordinates")
                 ->delimiter(',');
    o_parallel = app->add_flag("--parallel-subregions", parallel,
                               "search subregions concurrently with independent streams");
    o_timing = app->add_flag("--timing", timing, "record timestamps and wall time");
  }

  ConfigPtr build() const {
    sgo_config* raw = nullptr;
    if (config_file.empty()) {
      check(sgo_config_new(&raw));
    } else {
      check(sgo_config_load(config_file.c_str(), &raw));
    }
    ConfigPtr cfg(raw);
    sgo_config* c = cfg.get();
    if (o_problem && o_problem->count()) check(sgo_config_set_problem(c, problem));
    if (o_seed && o_seed->count()) check(sgo_config_set_seed(c, seed));
    if (o_noise->count()) check(sgo_config_set_noise(c, noise.c_str()));
    if (o_delta_frac->count()) check(sgo_config_set_delta_frac(c, delta_frac));
    if (o_delta->count()) check(sgo_config_set_delta(c, delta));
    if (o_h_frac->count()) check(sgo_config_set_h_frac(c, h_frac));
    if (o_h->count()) check(sgo_config_set_h(c, h));
    if (o_nu->count()) check(sgo_config_set_nu(c, nu));
    if (o_sigma->count()) check(sgo_config_set_sigma_frac(c, sigma_frac));
    if (o_eps_expand->count()) check(sgo_config_set_eps_expand(c, eps_expand));
    if (o_eps_max->count()) check(sgo_config_set_eps_max(c, eps_max));
    if (o_init->count()) {
      std::vector<double> xs;
      if (!(init_points.size() == 1 && init_points[0] == "auto")) {
        for (const std::string& s : init_points) {
          try {
            std::size_t used = 0;
            xs.push_back(std::stod(s, &used));
            if (used != s.size()) throw std::invalid_argument(s);
          } catch (const std::exception&) {
            throw Failure{SGO_ERR_CONFIG, "bad initial point '" + s + "'"};
          }
        }
      }
      check(sgo_config_set_init_points(c, xs.data(), xs.size()));
    }
    if (o_parallel->count()) check(sgo_config_set_parallel_subregions(c, parallel ? 1 : 0));
    if (o_timing->count()) check(sgo_config_set_timing(c, timing ? 1 : 0));
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"safe global optimization of noisy univariate functions"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  CLI::App* run_cmd = app.add_subcommand("run", "run both phases on one problem");
  AlgoFlags run_flags;
  run_flags.attach(run_cmd, true);
  std::string trace_path, report_path, plot_path;
  run_cmd->add_option("--trace", trace_path, "write the evaluation trace (JSON lines)");
  run_cmd->add_option("--report", report_path, "write the run report (JSON)");
  run_cmd->add_option("--plot", plot_path, "write the plot bundle (JSON)");

  CLI::App* bench_cmd = app.add_subcommand("bench", "aggregate counts over problems and seeds");
  AlgoFlags bench_flags;
  bench_flags.attach(bench_cmd, false);
  std::vector<int> problems;
  int seed_count = 30;
  std::vector<std::uint64_t> seed_list;
  int jobs = 1;
  bool with_iqr = false;
  std::string bench_out;
  bench_cmd->add_option("--problems", problems, "problem ids (default: all)")->delimiter(',');
  auto* o_seeds =
      bench_cmd->add_option("--seeds", seed_count, "number of seeds, 0..N-1 (default 30)");
  bench_cmd->add_option("--seed-list", seed_list, "explicit seeds")
      ->delimiter(',')
      ->excludes(o_seeds);
  bench_cmd->add_option("--jobs", jobs, "parallel runs")->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--iqr", with_iqr, "append interquartile range columns");
  bench_cmd->add_option("--out", bench_out, "CSV output path (default stdout)");

  CLI::App* export_cmd = app.add_subcommand("export", "build plot data from a trace and report");
  std::string ex_trace, ex_report, ex_out;
  export_cmd->add_option("--trace", ex_trace, "trace file")->required();
  export_cmd->add_option("--report", ex_report, "report file")->required();
  export_cmd->add_option("--out", ex_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) {
      ConfigPtr cfg = run_flags.build();
      if (!trace_path.empty()) check(sgo_config_set_trace_path(cfg.get(), trace_path.c_str()));
      if (!report_path.empty()) check(sgo_config_set_report_path(cfg.get(), report_path.c_str()));
      sgo_result* raw = nullptr;
      check(sgo_run(cfg.get(), &raw));
      ResultPtr res(raw);
      if (!plot_path.empty()) {
        char* plot = nullptr;
        check(sgo_result_plot_json(res.get(), &plot));
        StringPtr owned(plot);
        emit(plot_path, plot);
      }
      if (report_path.empty()) {
        char* report = nullptr;
        check(sgo_result_report_json(res.get(), &report));
        StringPtr owned(report);
        std::fputs(report, stdout);
      } else {
        int sp = 0, se = 0, gp = 0, ge = 0;
        double x = 0, g = 0;
        check(sgo_result_counts(res.get(), &sp, &se, &gp, &ge));
        check(sgo_result_best(res.get(), &x, &g));
        std::printf("points %d/%d evaluations %d/%d best x=%.10g g=%.10g\n", sp, gp, se, ge, x,
                    g);
      }
    } else if (*bench_cmd) {
      ConfigPtr cfg = bench_flags.build();
      if (problems.empty()) {
        for (int i = 1; i <= 18; ++i) problems.push_back(i);
      }
      if (seed_list.empty()) {
        for (int s = 0; s < seed_count; ++s) seed_list.push_back(static_cast<std::uint64_t>(s));
      }
      char* csv = nullptr;
      check(sgo_bench(cfg.get(), problems.data(), problems.size(), seed_list.data(),
                      seed_list.size(), jobs, with_iqr ? 1 : 0, &csv));
      StringPtr owned(csv);
      emit(bench_out, csv);
    } else if (*export_cmd) {
      const std::string trace = slurp(ex_trace);
      const std::string report = slurp(ex_report);
      char* bundle = nullptr;
      check(sgo_export_plot(trace.c_str(), report.c_str(), &bundle));
      StringPtr owned(bundle);
      emit(ex_out, bundle);
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "safeopt: %s\n", f.message.c_str());
    return exit_code(f.status);
  }
  return kExitOk;
}

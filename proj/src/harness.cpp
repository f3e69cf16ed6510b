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

#include "safeopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "safeopt/bounds.hpp"
#include "safeopt/errors.hpp"
#include "safeopt/expression.hpp"
#include "safeopt/testbed.hpp"

namespace safeopt {

namespace {

using Json = nlohmann::ordered_json;

// ---- config ----

const std::set<std::string>& config_keys() {
  static const std::set<std::string> keys = {
      "problem",    "noise",          "seed",        "delta",        "delta_frac",
      "h",          "h_frac",         "nu",          "sigma_frac",   "eps_expand",
      "eps_max",    "init_points",    "init_margin_frac", "parallel_subregions",
      "timing",     "grid_points",    "trace",       "report"};
  return keys;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json config_tree(const RunConfig& c) {
  Json j;
  if (c.inline_problem) {
    const InlineProblem& p = *c.inline_problem;
    Json q;
    q["expression"] = p.expression;
    q["a"] = p.a;
    q["b"] = p.b;
    q["lipschitz"] = p.lipschitz;
    q["threshold"] = optional_number(p.threshold);
    q["name"] = p.name;
    j["problem"] = q;
  } else if (c.problem_id) {
    j["problem"] = *c.problem_id;
  } else {
    j["problem"] = nullptr;
  }
  j["noise"] = {{"kind", std::string(to_string(c.noise))},
                {"gaussian_sigma_fraction", c.gaussian_sigma_fraction}};
  j["seed"] = c.seed;
  j["delta"] = optional_number(c.delta);
  j["delta_frac"] = c.delta_frac;
  j["h"] = optional_number(c.h);
  j["h_frac"] = optional_number(c.h_frac);
  j["nu"] = c.nu;
  j["sigma_frac"] = c.sigma_frac;
  j["eps_expand"] = c.eps_expand;
  j["eps_max"] = c.eps_max;
  j["init_points"] = c.init_points.empty() ? Json("auto") : Json(c.init_points);
  j["init_margin_frac"] = c.init_margin_frac;
  j["parallel_subregions"] = c.parallel_subregions;
  j["timing"] = c.timing;
  j["grid_points"] = c.grid_points;
  j["trace"] = c.trace_path;
  j["report"] = c.report_path;
  return j;
}

std::optional<double> read_optional(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

RunConfig config_from_tree(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!config_keys().contains(key)) throw ConfigError("config: unknown key '" + key + "'");
  }
  RunConfig c;
  try {
    if (j.contains("problem")) {
      const Json& p = j.at("problem");
      if (p.is_number_integer()) {
        c.problem_id = p.get<int>();
      } else if (p.is_object()) {
        InlineProblem q;
        q.expression = p.at("expression").get<std::string>();
        q.a = p.at("a").get<double>();
        q.b = p.at("b").get<double>();
        q.lipschitz = p.at("lipschitz").get<double>();
        if (p.contains("threshold")) q.threshold = read_optional(p.at("threshold"));
        if (p.contains("name")) q.name = p.at("name").get<std::string>();
        c.inline_problem = q;
      } else if (!p.is_null()) {
        throw ConfigError("config: 'problem' must be an id or an object");
      }
    }
    if (j.contains("noise")) {
      const Json& n = j.at("noise");
      if (n.is_string()) {
        c.noise = noise_kind_from_string(n.get<std::string>());
      } else {
        c.noise = noise_kind_from_string(n.at("kind").get<std::string>());
        if (n.contains("gaussian_sigma_fraction")) {
          c.gaussian_sigma_fraction = n.at("gaussian_sigma_fraction").get<double>();
        }
      }
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("delta")) c.delta = read_optional(j.at("delta"));
    if (j.contains("delta_frac")) c.delta_frac = j.at("delta_frac").get<double>();
    if (j.contains("h")) c.h = read_optional(j.at("h"));
    if (j.contains("h_frac")) c.h_frac = read_optional(j.at("h_frac"));
    if (j.contains("nu")) c.nu = j.at("nu").get<int>();
    if (j.contains("sigma_frac")) c.sigma_frac = j.at("sigma_frac").get<double>();
    if (j.contains("eps_expand")) c.eps_expand = j.at("eps_expand").get<double>();
    if (j.contains("eps_max")) c.eps_max = j.at("eps_max").get<double>();
    if (j.contains("init_points")) {
      const Json& p = j.at("init_points");
      if (p.is_string()) {
        if (p.get<std::string>() != "auto") {
          throw ConfigError("config: init_points must be \"auto\" or a list");
        }
      } else {
        c.init_points = p.get<std::vector<double>>();
        if (c.init_points.empty()) throw ConfigError("config: init_points list is empty");
      }
    }
    if (j.contains("init_margin_frac")) {
      c.init_margin_frac = j.at("init_margin_frac").get<double>();
    }
    if (j.contains("parallel_subregions")) {
      c.parallel_subregions = j.at("parallel_subregions").get<bool>();
    }
    if (j.contains("timing")) c.timing = j.at("timing").get<bool>();
    if (j.contains("grid_points")) c.grid_points = j.at("grid_points").get<int>();
    if (j.contains("trace")) c.trace_path = j.at("trace").get<std::string>();
    if (j.contains("report")) c.report_path = j.at("report").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const InputError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

Json parse_tree(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

// ---- report ----

Json interval_tree(const Interval& iv) {
  return {{"lo", iv.lo}, {"hi", iv.hi}, {"lo_open", iv.lo_open}, {"hi_open", iv.hi_open}};
}

Interval interval_from(const Json& j) {
  return Interval{j.at("lo").get<double>(), j.at("hi").get<double>(),
                  j.at("lo_open").get<bool>(), j.at("hi_open").get<bool>()};
}

Json intervals_tree(const std::vector<Interval>& v) {
  Json out = Json::array();
  for (const Interval& iv : v) out.push_back(interval_tree(iv));
  return out;
}

std::vector<Interval> intervals_from(const Json& j) {
  std::vector<Interval> out;
  for (const Json& e : j) out.push_back(interval_from(e));
  return out;
}

Json anchors_tree(const std::vector<Anchor>& v) {
  Json out = Json::array();
  for (const Anchor& a : v) out.push_back({{"x", a.x}, {"value", a.value}});
  return out;
}

std::vector<Anchor> anchors_from(const Json& j) {
  std::vector<Anchor> out;
  for (const Json& e : j) out.push_back({e.at("x").get<double>(), e.at("value").get<double>()});
  return out;
}

Json side_tree(const SideReport& s) {
  return {{"coordinate", s.coordinate}, {"stop", s.stop}, {"moves", s.moves}};
}

SideReport side_from(const Json& j) {
  return {j.at("coordinate").get<double>(), j.at("stop").get<std::string>(),
          j.at("moves").get<int>()};
}

Json counts_tree(const PhaseCounts& c) {
  return {{"points", c.points}, {"evaluations", c.evaluations}};
}

PhaseCounts counts_from(const Json& j) {
  return {j.at("points").get<int>(), j.at("evaluations").get<int>()};
}

// ---- trace ----

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- plot ----

struct Aggregate {
  double hat;
  double check;
};

std::map<double, Aggregate> aggregate(std::span<const TraceRecord> trace,
                                      std::optional<Phase> phase) {
  std::map<double, Aggregate> out;
  for (const TraceRecord& r : trace) {
    if (phase && r.phase != *phase) continue;
    auto [it, inserted] = out.try_emplace(r.x, Aggregate{r.value, r.value});
    if (!inserted) {
      it->second.hat = std::max(it->second.hat, r.value);
      it->second.check = std::min(it->second.check, r.value);
    }
  }
  return out;
}

Json envelope_tree(const PiecewiseLinearBound& bound, double lo, double hi) {
  std::vector<double> xs{lo, hi};
  for (double x : bound.node_x()) {
    if (x > lo && x < hi) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Json out = Json::array();
  for (double x : xs) out.push_back(Json::array({x, bound(x)}));
  return out;
}

}  // namespace

std::string config_to_json(const RunConfig& config) { return config_tree(config).dump(2) + "\n"; }

RunConfig config_from_json(std::string_view text) {
  return config_from_tree(parse_tree(text, "config"));
}

RunConfig load_config(const std::string& path) {
  try {
    return config_from_json(read_file(path));
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
}

ResolvedRun resolve(const RunConfig& config) {
  ResolvedRun out;
  try {
    Problem problem;
    if (config.problem_id && config.inline_problem) {
      throw ConfigError("config names both a catalog problem and an inline problem");
    }
    if (config.problem_id) {
      problem = get_problem(*config.problem_id);
    } else if (config.inline_problem) {
      const InlineProblem& q = *config.inline_problem;
      problem.id = 0;
      problem.name = q.name.empty() ? q.expression : q.name;
      problem.f = parse_expression(q.expression);
      problem.a = q.a;
      problem.b = q.b;
      problem.lipschitz = q.lipschitz;
      if (q.threshold) problem.threshold = *q.threshold;
    } else {
      throw ConfigError("config names no problem");
    }
    if (!(problem.a < problem.b)) throw ConfigError("problem domain requires a < b");

    const Range range = estimate_range(problem.f, problem.a, problem.b, config.grid_points);
    out.range_min = range.min;
    out.range_max = range.max;
    problem.true_max_x = range.argmax;
    problem.true_max_f = range.max;

    const double delta = config.delta ? *config.delta : config.delta_frac * range.span();
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be nonnegative");
    problem.noise_bound = delta;

    if (config.h) {
      problem.threshold = *config.h;
    } else if (config.h_frac) {
      problem.threshold = range.min + *config.h_frac * range.span();
    } else if (config.inline_problem && !config.inline_problem->threshold) {
      throw ConfigError("inline problem needs a threshold, h or h_frac");
    }
    problem.validate();

    out.noise = NoiseModel{config.noise, delta, config.gaussian_sigma_fraction};
    out.seed = config.seed;
    out.expansion = ExpansionParams{config.nu, config.sigma_frac, config.eps_expand};
    out.expansion.validate();
    out.maximization.eps_max = config.eps_max;
    out.maximization.nu = config.nu;
    out.maximization.independent_streams = config.parallel_subregions;
    out.maximization.parallel = config.parallel_subregions;
    out.maximization.validate();
    // Building a throwaway source validates the noise parameters.
    NoiseSource probe(out.noise, 0);

    if (config.init_points.empty()) {
      out.init_points = {pick_initial_point(problem, config.init_margin_frac * range.span(),
                                            config.seed)};
    } else {
      for (double x : config.init_points) {
        if (!problem.in_domain(x)) {
          throw ConfigError("initial point " + format_double(x) + " is outside the domain");
        }
      }
      out.init_points = config.init_points;
    }
    out.problem = std::move(problem);
  } catch (const ConfigError&) {
    throw;
  } catch (const SafetyViolationError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return out;
}

PhaseCounts count_phase(std::span<const TraceRecord> trace, Phase phase) {
  std::set<double> points;
  PhaseCounts c;
  for (const TraceRecord& r : trace) {
    if (r.phase != phase) continue;
    points.insert(r.x);
    ++c.evaluations;
  }
  c.points = static_cast<int>(points.size());
  return c;
}

RunOutcome run(const RunConfig& config, const SelectionObserver& observer) {
  RunOutcome out;
  out.resolved = resolve(config);
  const ResolvedRun& rr = out.resolved;
  const auto start = std::chrono::steady_clock::now();

  Oracle oracle(rr.problem, rr.noise, rr.seed, OracleOptions{true, config.timing});
  try {
    out.expansion = expand(oracle, rr.init_points, rr.expansion);
    out.maximization = maximize(out.expansion.region, oracle, rr.maximization, observer);
  } catch (const SafetyViolationError&) {
    if (!config.trace_path.empty()) write_file(config.trace_path, trace_to_jsonl(oracle.trace()));
    throw;
  }
  const auto stop = std::chrono::steady_clock::now();

  out.log = oracle.log();
  out.trace = oracle.trace();

  RunReport& rep = out.report;
  rep.config = config;
  rep.problem_id = rr.problem.id;
  rep.problem_name = rr.problem.name;
  rep.a = rr.problem.a;
  rep.b = rr.problem.b;
  rep.lipschitz = rr.problem.lipschitz;
  rep.delta = rr.problem.noise_bound;
  rep.h = rr.problem.threshold;
  rep.init_points = rr.init_points;
  rep.safe_region = out.expansion.region.intervals();
  for (const SafeRegion& r : out.expansion.regions) {
    rep.regions.push_back(RegionReport{
        r.interval, r.origins,
        SideReport{r.left.coordinate, std::string(to_string(r.left.stop)), r.left.moves},
        SideReport{r.right.coordinate, std::string(to_string(r.right.stop)), r.right.moves},
        r.no_expansion});
  }
  rep.expansion_iterations = out.expansion.iterations;
  for (const SampleEntry& e : out.log.entries()) rep.minorant_anchors.push_back({e.x, e.hat});
  std::sort(rep.minorant_anchors.begin(), rep.minorant_anchors.end(),
            [](const Anchor& l, const Anchor& r) { return l.x < r.x; });
  for (std::size_t j = 0; j < out.maximization.subregions.size(); ++j) {
    const SubregionResult& s = out.maximization.subregions[j];
    rep.subregions.push_back(SubregionReport{s.interval, std::string(to_string(s.stop)),
                                             s.iterations, s.accepted,
                                             out.maximization.majorants[j].anchors()});
  }
  rep.phase1 = count_phase(out.trace, Phase::kExpansion);
  rep.phase2 = count_phase(out.trace, Phase::kMaximization);
  rep.total = PhaseCounts{rep.phase1.points + rep.phase2.points,
                          rep.phase1.evaluations + rep.phase2.evaluations};
  rep.x_star = out.maximization.best.x;
  rep.g_star = out.maximization.best.g;
  rep.n_g = out.maximization.exclusion.n_g.intervals();
  rep.n_f = out.maximization.exclusion.n_f.intervals();
  rep.violations = static_cast<int>(oracle.sentinel().violations());
  rep.wall_time_ns =
      config.timing
          ? std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()
          : 0;

  if (!config.trace_path.empty()) write_file(config.trace_path, trace_to_jsonl(out.trace));
  if (!config.report_path.empty()) write_file(config.report_path, report_to_json(rep));
  return out;
}

std::string report_to_json(const RunReport& r) {
  Json j;
  j["problem"] = {{"id", r.problem_id}, {"name", r.problem_name}, {"a", r.a},
                  {"b", r.b},           {"lipschitz", r.lipschitz}};
  j["delta"] = r.delta;
  j["h"] = r.h;
  j["init_points"] = r.init_points;
  j["safe_region"] = intervals_tree(r.safe_region);
  Json regions = Json::array();
  for (const RegionReport& g : r.regions) {
    regions.push_back({{"interval", interval_tree(g.interval)},
                       {"origins", g.origins},
                       {"left", side_tree(g.left)},
                       {"right", side_tree(g.right)},
                       {"no_expansion", g.no_expansion}});
  }
  j["regions"] = regions;
  j["expansion_iterations"] = r.expansion_iterations;
  j["minorant_anchors"] = anchors_tree(r.minorant_anchors);
  Json subs = Json::array();
  for (const SubregionReport& s : r.subregions) {
    subs.push_back({{"interval", interval_tree(s.interval)},
                    {"stop", s.stop},
                    {"iterations", s.iterations},
                    {"accepted", s.accepted},
                    {"majorant_anchors", anchors_tree(s.majorant_anchors)}});
  }
  j["subregions"] = subs;
  j["phase1"] = counts_tree(r.phase1);
  j["phase2"] = counts_tree(r.phase2);
  j["total"] = counts_tree(r.total);
  j["best"] = {{"x", r.x_star}, {"g", r.g_star}};
  j["n_g"] = intervals_tree(r.n_g);
  j["n_f"] = intervals_tree(r.n_f);
  j["violations"] = r.violations;
  j["wall_time_ns"] = r.wall_time_ns;
  j["config"] = config_tree(r.config);
  return j.dump(2) + "\n";
}

RunReport report_from_json(std::string_view text) {
  const Json j = parse_tree(text, "report");
  RunReport r;
  try {
    const Json& p = j.at("problem");
    r.problem_id = p.at("id").get<int>();
    r.problem_name = p.at("name").get<std::string>();
    r.a = p.at("a").get<double>();
    r.b = p.at("b").get<double>();
    r.lipschitz = p.at("lipschitz").get<double>();
    r.delta = j.at("delta").get<double>();
    r.h = j.at("h").get<double>();
    r.init_points = j.at("init_points").get<std::vector<double>>();
    r.safe_region = intervals_from(j.at("safe_region"));
    for (const Json& g : j.at("regions")) {
      r.regions.push_back(RegionReport{interval_from(g.at("interval")),
                                       g.at("origins").get<std::vector<double>>(),
                                       side_from(g.at("left")), side_from(g.at("right")),
                                       g.at("no_expansion").get<bool>()});
    }
    r.expansion_iterations = j.at("expansion_iterations").get<int>();
    r.minorant_anchors = anchors_from(j.at("minorant_anchors"));
    for (const Json& s : j.at("subregions")) {
      r.subregions.push_back(SubregionReport{
          interval_from(s.at("interval")), s.at("stop").get<std::string>(),
          s.at("iterations").get<int>(), s.at("accepted").get<int>(),
          anchors_from(s.at("majorant_anchors"))});
    }
    r.phase1 = counts_from(j.at("phase1"));
    r.phase2 = counts_from(j.at("phase2"));
    r.total = counts_from(j.at("total"));
    r.x_star = j.at("best").at("x").get<double>();
    r.g_star = j.at("best").at("g").get<double>();
    r.n_g = intervals_from(j.at("n_g"));
    r.n_f = intervals_from(j.at("n_f"));
    r.violations = j.at("violations").get<int>();
    r.wall_time_ns = j.at("wall_time_ns").get<std::int64_t>();
    r.config = config_from_tree(j.at("config"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
  return r;
}

std::string trace_line(const TraceRecord& r) {
  std::string s = "{\"phase\":" + std::to_string(static_cast<int>(r.phase));
  s += ",\"subregion\":" + std::to_string(r.subregion);
  s += ",\"iteration\":" + std::to_string(r.iteration);
  s += ",\"x\":" + format_double(r.x);
  s += ",\"value\":" + format_double(r.value);
  s += ",\"repetition_index\":" + std::to_string(r.repetition_index);
  s += ",\"event\":" + Json(r.event).dump();
  s += ",\"timestamp_ns\":" + std::to_string(r.timestamp_ns);
  if (r.side) s += ",\"side\":" + Json(*r.side).dump();
  if (r.interval) s += ",\"interval\":" + std::to_string(*r.interval);
  if (r.r_max) s += ",\"r_max\":" + format_double(*r.r_max);
  s += "}";
  return s;
}

std::string trace_to_jsonl(std::span<const TraceRecord> trace) {
  std::string out;
  for (const TraceRecord& r : trace) {
    out += trace_line(r);
    out += '\n';
  }
  return out;
}

std::vector<TraceRecord> trace_from_jsonl(std::string_view text) {
  std::vector<TraceRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json j = Json::parse(line);
      TraceRecord r;
      const int phase = j.at("phase").get<int>();
      if (phase != 1 && phase != 2) throw ConfigError("bad phase");
      r.phase = static_cast<Phase>(phase);
      r.subregion = j.at("subregion").get<int>();
      r.iteration = j.at("iteration").get<int>();
      r.x = j.at("x").get<double>();
      r.value = j.at("value").get<double>();
      r.repetition_index = j.at("repetition_index").get<int>();
      r.event = j.at("event").get<std::string>();
      r.timestamp_ns = j.at("timestamp_ns").get<std::int64_t>();
      if (j.contains("side")) r.side = j.at("side").get<std::string>();
      if (j.contains("interval")) r.interval = j.at("interval").get<int>();
      if (j.contains("r_max")) r.r_max = j.at("r_max").get<double>();
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ConfigError("trace line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

BenchStat median_iqr(std::vector<double> values) {
  if (values.empty()) throw InputError("median_iqr: no values");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  return BenchStat{quantile(0.5), quantile(0.75) - quantile(0.25)};
}

std::vector<BenchRow> bench(std::span<const int> problems, std::span<const std::uint64_t> seeds,
                            const RunConfig& base, int jobs) {
  if (problems.empty()) throw InputError("bench: no problems");
  if (seeds.empty()) throw InputError("bench: no seeds");
  const std::size_t n = problems.size() * seeds.size();
  std::vector<RunReport> reports(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      RunConfig c = base;
      c.problem_id = problems[k / seeds.size()];
      c.inline_problem.reset();
      c.seed = seeds[k % seeds.size()];
      c.trace_path.clear();
      c.report_path.clear();
      try {
        reports[k] = run(c).report;
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<BenchRow> rows;
  for (std::size_t p = 0; p < problems.size(); ++p) {
    std::vector<double> sp, se, gp, ge, tp, te;
    BenchRow row;
    row.problem = problems[p];
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const RunReport& r = reports[p * seeds.size() + s];
      sp.push_back(r.phase1.points);
      se.push_back(r.phase1.evaluations);
      gp.push_back(r.phase2.points);
      ge.push_back(r.phase2.evaluations);
      tp.push_back(r.total.points);
      te.push_back(r.total.evaluations);
      row.violations += r.violations;
      ++row.runs;
    }
    row.se_points = median_iqr(sp);
    row.se_evals = median_iqr(se);
    row.gm_points = median_iqr(gp);
    row.gm_evals = median_iqr(ge);
    row.total_points = median_iqr(tp);
    row.total_evals = median_iqr(te);
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(std::span<const BenchRow> rows, bool with_iqr) {
  static const char* kColumns[] = {"se_points",    "se_evals",   "gm_points", "gm_evals",
                                   "total_points", "total_evals"};
  auto number = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
  };
  std::string out = "problem";
  for (const char* c : kColumns) out += std::string(",") + c;
  if (with_iqr) {
    for (const char* c : kColumns) out += std::string(",") + c + "_iqr";
  }
  out += '\n';
  for (const BenchRow& r : rows) {
    const BenchStat* stats[] = {&r.se_points,    &r.se_evals,   &r.gm_points, &r.gm_evals,
                                &r.total_points, &r.total_evals};
    out += std::to_string(r.problem);
    for (const BenchStat* s : stats) out += "," + number(s->median);
    if (with_iqr) {
      for (const BenchStat* s : stats) out += "," + number(s->iqr);
    }
    out += '\n';
  }
  return out;
}

std::string export_plot_data(std::span<const TraceRecord> trace, const RunReport& report) {
  const double L = report.lipschitz;
  const double delta = report.delta;
  Json j;
  j["problem"] = {{"id", report.problem_id}, {"name", report.problem_name},
                  {"a", report.a},           {"b", report.b},
                  {"lipschitz", L},          {"delta", delta},
                  {"h", report.h}};

  Json p1;
  Json marks = Json::array();
  for (const TraceRecord& r : trace) {
    if (r.phase != Phase::kExpansion) continue;
    marks.push_back({{"x", r.x}, {"value", r.value}, {"event", r.event},
                     {"side", r.side ? Json(*r.side) : Json(nullptr)}});
  }
  p1["evaluations"] = marks;
  std::vector<Anchor> phase1_anchors;
  Json series = Json::array();
  for (const auto& [x, agg] : aggregate(trace, Phase::kExpansion)) {
    phase1_anchors.push_back({x, agg.hat});
    Json pts = Json::array();
    for (double at : {report.a, x, report.b}) {
      pts.push_back(Json::array({at, minorant_piece(at, x, agg.hat, L, delta)}));
    }
    series.push_back({{"x", x}, {"value", agg.hat}, {"points", pts}});
  }
  p1["minorant_anchors"] = series;
  if (!phase1_anchors.empty()) {
    PiecewiseLinearBound phi(BoundKind::kMinorant, phase1_anchors, L, delta);
    p1["minorant_envelope"] = envelope_tree(phi, report.a, report.b);
  } else {
    p1["minorant_envelope"] = Json::array();
  }
  p1["region"] = intervals_tree(report.safe_region);
  j["phase1"] = p1;

  const bool degenerate =
      std::all_of(report.safe_region.begin(), report.safe_region.end(),
                  [](const Interval& iv) { return iv.lo == iv.hi; });
  j["degenerate"] = degenerate;
  if (degenerate) {
    j["phase2"] = nullptr;
    return j.dump(2) + "\n";
  }

  Json p2;
  marks = Json::array();
  for (const TraceRecord& r : trace) {
    if (r.phase != Phase::kMaximization) continue;
    marks.push_back({{"x", r.x},
                     {"value", r.value},
                     {"event", r.event},
                     {"subregion", r.subregion},
                     {"r_max", r.r_max ? Json(*r.r_max) : Json(nullptr)}});
  }
  p2["evaluations"] = marks;
  const auto all = aggregate(trace, std::nullopt);
  Json majorants = Json::array();
  for (std::size_t s = 0; s < report.safe_region.size(); ++s) {
    const Interval& part = report.safe_region[s];
    std::vector<Anchor> anchors;
    for (auto it = all.lower_bound(part.lo); it != all.end() && it->first <= part.hi; ++it) {
      anchors.push_back({it->first, it->second.check});
    }
    Json m;
    m["subregion"] = s;
    m["interval"] = interval_tree(part);
    m["anchors"] = anchors_tree(anchors);
    if (!anchors.empty()) {
      PiecewiseLinearBound gamma(BoundKind::kMajorant, anchors, L, delta);
      m["envelope"] = envelope_tree(gamma, part.lo, part.hi);
    } else {
      m["envelope"] = Json::array();
    }
    majorants.push_back(m);
  }
  p2["majorants"] = majorants;
  p2["incumbent"] = {{"x", report.x_star}, {"g", report.g_star}};
  p2["n_g"] = intervals_tree(report.n_g);
  p2["n_f"] = intervals_tree(report.n_f);
  j["phase2"] = p2;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw InputError("write to '" + path + "' failed");
}

}  // namespace safeopt

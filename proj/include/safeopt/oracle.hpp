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

#ifndef SAFEOPT_ORACLE_HPP_
#define SAFEOPT_ORACLE_HPP_

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "safeopt/problem.hpp"
#include "safeopt/sample_log.hpp"

namespace safeopt {

// One line of the evaluation trace. The algorithm fills the tag fields; the
// oracle fills x, value, repetition_index and timestamp_ns.
struct TraceRecord {
  Phase phase = Phase::kExpansion;
  int subregion = 0;
  int iteration = 0;
  double x = 0.0;
  double value = 0.0;
  // Zero-based index of this observation among those at the same coordinate.
  int repetition_index = 0;
  std::string event;
  std::int64_t timestamp_ns = 0;
  // Expansion: which boundary was evaluated ("left" / "right").
  std::optional<std::string> side;
  // Maximization: selected interval index and its characteristic.
  std::optional<int> interval;
  std::optional<double> r_max;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct SafetyRecord {
  double x = 0.0;
  double value = 0.0;
};

// Watches every observation for g(x) < h.
class SafetySentinel {
 public:
  explicit SafetySentinel(double threshold) : threshold_(threshold) {}

  // Returns false and records the call when value < threshold.
  bool observe(double x, double value);

  double threshold() const { return threshold_; }
  std::size_t violations() const { return records_.size(); }
  const std::vector<SafetyRecord>& records() const { return records_; }

 private:
  double threshold_;
  std::vector<SafetyRecord> records_;
};

struct OracleOptions {
  // Throw SafetyViolationError on the first observation below h.
  bool abort_on_violation = true;
  // Fill TraceRecord::timestamp_ns from a steady clock; otherwise 0 so that
  // traces stay byte-reproducible.
  bool timing = false;
};

// The noisy black box g = f + xi, plus the run-wide sample log, trace and
// safety sentinel. Single-run, single-threaded.
class Oracle {
 public:
  Oracle(Problem problem, NoiseModel model, std::uint64_t seed,
         OracleOptions options = {});

  // Observes g(x). Throws DomainError if x is outside [a, b].
  double evaluate(double x, TraceRecord tag = {});

  const Problem& problem() const { return *problem_; }
  const NoiseModel& noise_model() const { return noise_.model(); }
  const SampleLog& log() const { return log_; }
  const SafetySentinel& sentinel() const { return sentinel_; }
  const std::vector<TraceRecord>& trace() const { return trace_; }
  const OracleOptions& options() const { return options_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t evaluations() const { return trace_.size(); }

  // Replaces the event label of the most recent trace record; algorithms
  // use it when the outcome of an observation is known only afterwards.
  void set_last_event(std::string event);

  // Child oracle with an independent noise stream derived from (seed,
  // stream) whose log holds only the entries inside [lo, hi]. Its trace
  // starts empty.
  Oracle fork(std::uint64_t stream, double lo, double hi) const;
  // Replays a child's trace into this oracle's log, trace and sentinel.
  void absorb(const Oracle& child);

 private:
  std::shared_ptr<const Problem> problem_;
  NoiseSource noise_;
  std::uint64_t seed_;
  OracleOptions options_;
  SampleLog log_;
  SafetySentinel sentinel_;
  std::vector<TraceRecord> trace_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace safeopt

#endif  // SAFEOPT_ORACLE_HPP_

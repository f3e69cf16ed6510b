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

#ifndef SAFEOPT_SAMPLE_LOG_HPP_
#define SAFEOPT_SAMPLE_LOG_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace safeopt {

enum class Phase { kExpansion = 1, kMaximization = 2 };

std::string_view to_string(Phase phase);

// Every observation made at one coordinate. `hat` and `check` are the running
// maximum and minimum of `values`.
struct SampleEntry {
  double x = 0.0;
  std::vector<double> values;
  // Phase and iteration of the first observation.
  Phase phase = Phase::kExpansion;
  int iteration = 0;
  double hat = 0.0;
  double check = 0.0;

  std::size_t count() const { return values.size(); }
};

// Append-only record of oracle observations, one entry per distinct
// coordinate (exact equality; coordinates come from the algorithms).
class SampleLog {
 public:
  const SampleEntry& append(double x, double value, Phase phase, int iteration);

  const SampleEntry* find(double x) const;
  const std::vector<SampleEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t evaluations() const { return evaluations_; }

  // Entries with lo <= x <= hi, sorted by coordinate.
  std::vector<const SampleEntry*> sorted_in(double lo, double hi) const;
  // Copy holding only the entries inside [lo, hi], in insertion order.
  SampleLog restricted(double lo, double hi) const;

 private:
  std::vector<SampleEntry> entries_;
  std::map<double, std::size_t> index_;
  std::size_t evaluations_ = 0;
};

struct PairViolation {
  double x1 = 0.0;
  double value1 = 0.0;
  double x2 = 0.0;
  double value2 = 0.0;
  // L * |x1 - x2| + 2 * delta for this pair.
  double allowed = 0.0;
};

struct AuditResult {
  bool ok = true;
  std::optional<PairViolation> first_violation;
};

// Checks |g(x1) - g(x2)| <= L |x1 - x2| + 2 delta (+1e-12) over every pair of
// logged observations, including repeated observations at one coordinate.
// Pass delta = 0 to test plain Lipschitz continuity of the observations.
AuditResult sample_property_audit(const SampleLog& log, double lipschitz,
                                  double delta);

}  // namespace safeopt

#endif  // SAFEOPT_SAMPLE_LOG_HPP_

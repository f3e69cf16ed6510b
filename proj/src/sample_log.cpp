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

#include "safeopt/sample_log.hpp"

#include <algorithm>
#include <cmath>

#include "safeopt/errors.hpp"

namespace safeopt {

std::string_view to_string(Phase phase) {
  return phase == Phase::kExpansion ? "expansion" : "maximization";
}

const SampleEntry& SampleLog::append(double x, double value, Phase phase,
                                     int iteration) {
  ++evaluations_;
  auto [it, inserted] = index_.try_emplace(x, entries_.size());
  if (inserted) {
    SampleEntry entry;
    entry.x = x;
    entry.values.push_back(value);
    entry.phase = phase;
    entry.iteration = iteration;
    entry.hat = value;
    entry.check = value;
    entries_.push_back(std::move(entry));
    return entries_.back();
  }
  SampleEntry& entry = entries_[it->second];
  entry.values.push_back(value);
  entry.hat = std::max(entry.hat, value);
  entry.check = std::min(entry.check, value);
  return entry;
}

const SampleEntry* SampleLog::find(double x) const {
  auto it = index_.find(x);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::vector<const SampleEntry*> SampleLog::sorted_in(double lo, double hi) const {
  std::vector<const SampleEntry*> out;
  for (auto it = index_.lower_bound(lo); it != index_.end() && it->first <= hi; ++it) {
    out.push_back(&entries_[it->second]);
  }
  return out;
}

SampleLog SampleLog::restricted(double lo, double hi) const {
  SampleLog out;
  for (const SampleEntry& e : entries_) {
    if (e.x < lo || e.x > hi) continue;
    out.index_.emplace(e.x, out.entries_.size());
    out.entries_.push_back(e);
    out.evaluations_ += e.count();
  }
  return out;
}

AuditResult sample_property_audit(const SampleLog& log, double lipschitz,
                                  double delta) {
  if (log.empty()) throw InputError("sample_property_audit: empty log");
  constexpr double kSlack = 1e-12;
  const auto& entries = log.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const SampleEntry& a = entries[i];
    for (std::size_t j = i; j < entries.size(); ++j) {
      const SampleEntry& b = entries[j];
      const double allowed = lipschitz * std::abs(a.x - b.x) + 2.0 * delta;
      // The largest spread between the two value sets is attained by one
      // entry's maximum against the other's minimum.
      if (a.hat - b.check > allowed + kSlack) {
        return {false, PairViolation{a.x, a.hat, b.x, b.check, allowed}};
      }
      if (b.hat - a.check > allowed + kSlack) {
        return {false, PairViolation{a.x, a.check, b.x, b.hat, allowed}};
      }
    }
  }
  return {};
}

}  // namespace safeopt

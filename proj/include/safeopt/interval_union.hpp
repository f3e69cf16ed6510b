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

#ifndef SAFEOPT_INTERVAL_UNION_HPP_
#define SAFEOPT_INTERVAL_UNION_HPP_

#include <cstddef>
#include <vector>

namespace safeopt {

// An interval of the real line. Endpoints are closed unless flagged open.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;

  bool contains(double x) const;
  bool empty() const;
  double length() const { return hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Sorted, pairwise disjoint union of intervals. Every constructor normalizes,
// so the stored representation is canonical: overlapping or touching pieces
// are merged (touching means sharing an endpoint that at least one side
// includes) and empty pieces are dropped.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> parts);
  IntervalUnion(std::initializer_list<Interval> parts)
      : IntervalUnion(std::vector<Interval>(parts)) {}

  const std::vector<Interval>& intervals() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  bool contains(double x) const;
  // Total length (Lebesgue measure).
  double measure() const;
  // True if every point of `other` lies in this union.
  bool includes(const IntervalUnion& other) const;

  IntervalUnion intersect(const IntervalUnion& other) const;
  IntervalUnion unite(const IntervalUnion& other) const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> parts_;
};

// Sorts and merges `parts`; idempotent.
IntervalUnion normalize(std::vector<Interval> parts);

}  // namespace safeopt

#endif  // SAFEOPT_INTERVAL_UNION_HPP_

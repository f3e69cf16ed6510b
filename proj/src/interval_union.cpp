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

#include "safeopt/interval_union.hpp"

#include <algorithm>

namespace safeopt {

bool Interval::contains(double x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && lo_open) return false;
  if (x == hi && hi_open) return false;
  return true;
}

bool Interval::empty() const {
  if (lo > hi) return true;
  return lo == hi && (lo_open || hi_open);
}

IntervalUnion normalize(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& iv) { return iv.empty(); });
  std::sort(parts.begin(), parts.end(), [](const Interval& l, const Interval& r) {
    if (l.lo != r.lo) return l.lo < r.lo;
    return !l.lo_open && r.lo_open;
  });

  std::vector<Interval> merged;
  for (const Interval& iv : parts) {
    if (merged.empty()) {
      merged.push_back(iv);
      continue;
    }
    Interval& cur = merged.back();
    const bool overlaps =
        iv.lo < cur.hi || (iv.lo == cur.hi && (!cur.hi_open || !iv.lo_open));
    if (!overlaps) {
      merged.push_back(iv);
      continue;
    }
    if (iv.hi > cur.hi) {
      cur.hi = iv.hi;
      cur.hi_open = iv.hi_open;
    } else if (iv.hi == cur.hi) {
      cur.hi_open = cur.hi_open && iv.hi_open;
    }
  }
  return IntervalUnion(std::move(merged));
}

IntervalUnion::IntervalUnion(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& iv) { return iv.empty(); });
  const bool canonical = [&] {
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const Interval& a = parts[i - 1];
      const Interval& b = parts[i];
      if (b.lo < a.hi) return false;
      if (b.lo == a.hi && (!a.hi_open || !b.lo_open)) return false;
    }
    return true;
  }();
  if (canonical) {
    parts_ = std::move(parts);
  } else {
    parts_ = normalize(std::move(parts)).parts_;
  }
}

bool IntervalUnion::contains(double x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x);
}

double IntervalUnion::measure() const {
  double total = 0.0;
  for (const Interval& iv : parts_) total += iv.length();
  return total;
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
  std::vector<Interval> out;
  for (const Interval& a : parts_) {
    for (const Interval& b : other.parts_) {
      Interval c;
      if (a.lo > b.lo) {
        c.lo = a.lo;
        c.lo_open = a.lo_open;
      } else if (b.lo > a.lo) {
        c.lo = b.lo;
        c.lo_open = b.lo_open;
      } else {
        c.lo = a.lo;
        c.lo_open = a.lo_open || b.lo_open;
      }
      if (a.hi < b.hi) {
        c.hi = a.hi;
        c.hi_open = a.hi_open;
      } else if (b.hi < a.hi) {
        c.hi = b.hi;
        c.hi_open = b.hi_open;
      } else {
        c.hi = a.hi;
        c.hi_open = a.hi_open || b.hi_open;
      }
      if (!c.empty()) out.push_back(c);
    }
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalUnion(std::move(all));
}

bool IntervalUnion::includes(const IntervalUnion& other) const {
  return intersect(other) == other;
}

}  // namespace safeopt

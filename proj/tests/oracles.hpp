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

// Reference computations used only by tests. They share no code with the
// library beyond the data types.
#ifndef SAFEOPT_TESTS_ORACLES_HPP_
#define SAFEOPT_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "safeopt/bounds.hpp"
#include "safeopt/interval_union.hpp"

namespace safeopt::testing {

struct GridMax {
  double x = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

// Plain grid of n+1 points on [lo, hi].
inline GridMax grid_max(const std::function<double(double)>& fn, double lo, double hi, int n) {
  GridMax best;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double v = fn(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

// Grid of n+1 points, then repeated subdivision of every cell whose
// Lipschitz upper estimate can still beat the best value, until cells are
// narrower than tol / L.
inline GridMax refined_max(const std::function<double(double)>& fn, double lo, double hi,
                           double lipschitz, int n = 100000, double tol = 1e-10) {
  struct Cell {
    double l, r, fl, fr;
  };
  std::vector<Cell> cells;
  GridMax best;
  double prev_x = lo;
  double prev_v = fn(lo);
  best = {lo, prev_v};
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double v = fn(x);
    if (v > best.value) best = {x, v};
    cells.push_back({prev_x, x, prev_v, v});
    prev_x = x;
    prev_v = v;
  }
  while (!cells.empty()) {
    std::vector<Cell> next;
    for (const Cell& c : cells) {
      const double w = c.r - c.l;
      const double upper = 0.5 * (c.fl + c.fr) + 0.5 * lipschitz * w;
      if (upper < best.value + 0.1 * tol) continue;
      if (lipschitz * w <= tol) continue;
      constexpr int kSplit = 8;
      double px = c.l, pv = c.fl;
      for (int k = 1; k <= kSplit; ++k) {
        const double x = k == kSplit ? c.r : c.l + w * k / kSplit;
        const double v = k == kSplit ? c.fr : fn(x);
        if (v > best.value) best = {x, v};
        next.push_back({px, x, pv, v});
        px = x;
        pv = v;
      }
    }
    cells.swap(next);
    if (cells.size() > 4000000) break;
  }
  return best;
}

// Bound evaluated as the explicit max/min over all pieces.
inline double brute_bound(BoundKind kind, const std::vector<Anchor>& anchors, double L,
                          double delta, double x) {
  double out = kind == BoundKind::kMinorant ? -std::numeric_limits<double>::infinity()
                                            : std::numeric_limits<double>::infinity();
  for (const Anchor& a : anchors) {
    if (kind == BoundKind::kMinorant) {
      out = std::max(out, a.value - L * std::abs(x - a.x) - 2.0 * delta);
    } else {
      out = std::min(out, a.value + L * std::abs(x - a.x) + 2.0 * delta);
    }
  }
  return out;
}

// Same envelope on an ascending grid by two linear sweeps over sorted anchors.
inline std::vector<double> sweep_bound(BoundKind kind, std::vector<Anchor> anchors, double L,
                                       double delta, const std::vector<double>& xs) {
  std::sort(anchors.begin(), anchors.end(),
            [](const Anchor& l, const Anchor& r) { return l.x < r.x; });
  const bool lower = kind == BoundKind::kMinorant;
  const double sign = lower ? 1.0 : -1.0;
  // work with s = sign * value so both kinds become a max of downward cones
  std::vector<double> out(xs.size(), -std::numeric_limits<double>::infinity());
  double best = -std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (k < anchors.size() && anchors[k].x <= xs[i]) {
      best = std::max(best, sign * anchors[k].value + L * anchors[k].x);
      ++k;
    }
    out[i] = best - L * xs[i];
  }
  best = -std::numeric_limits<double>::infinity();
  k = anchors.size();
  for (std::size_t i = xs.size(); i-- > 0;) {
    while (k > 0 && anchors[k - 1].x >= xs[i]) {
      best = std::max(best, sign * anchors[k - 1].value - L * anchors[k - 1].x);
      --k;
    }
    out[i] = std::max(out[i], best + L * xs[i]);
  }
  for (double& v : out) v = sign * v - 2.0 * delta * sign;
  return out;
}

// n+1 evenly spaced points over each interval, in proportion to its length
// (at least two per nondegenerate interval).
inline std::vector<double> grid_over(const IntervalUnion& region, int n) {
  std::vector<double> xs;
  const double total = region.measure();
  for (const Interval& iv : region.intervals()) {
    if (iv.length() == 0.0) {
      xs.push_back(iv.lo);
      continue;
    }
    const int m = std::max(2, static_cast<int>(std::ceil(n * iv.length() / total)));
    for (int i = 0; i <= m; ++i) xs.push_back(iv.lo + iv.length() * i / m);
  }
  return xs;
}

}  // namespace safeopt::testing

#endif  // SAFEOPT_TESTS_ORACLES_HPP_

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

#include "safeopt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "safeopt/errors.hpp"

namespace safeopt {

double minorant_piece(double x, double center, double value, double lipschitz,
                      double delta) {
  return value - lipschitz * std::abs(center - x) - 2.0 * delta;
}

double majorant_piece(double x, double center, double value, double lipschitz,
                      double delta) {
  return value + lipschitz * std::abs(center - x) + 2.0 * delta;
}

PiecewiseLinearBound::PiecewiseLinearBound(BoundKind kind,
                                           std::vector<Anchor> anchors,
                                           double lipschitz, double delta)
    : kind_(kind), anchors_(std::move(anchors)), lipschitz_(lipschitz), delta_(delta) {
  if (!(lipschitz_ > 0.0)) throw InputError("bound: Lipschitz constant must be positive");
  if (!(delta_ >= 0.0)) throw InputError("bound: delta must be nonnegative");
  if (anchors_.empty()) return;

  const bool upper = kind_ == BoundKind::kMajorant;
  std::vector<std::size_t> order(anchors_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return anchors_[l].x < anchors_[r].x;
  });

  // Own-cone apex per distinct coordinate; duplicates keep the tighter apex.
  for (std::size_t idx : order) {
    const Anchor& an = anchors_[idx];
    const double apex = upper ? an.value + 2.0 * delta_ : an.value - 2.0 * delta_;
    if (!node_x_.empty() && node_x_.back() == an.x) {
      node_value_.back() =
          upper ? std::min(node_value_.back(), apex) : std::max(node_value_.back(), apex);
      continue;
    }
    node_x_.push_back(an.x);
    node_value_.push_back(apex);
  }

  // Two sweeps propagate every cone to every node.
  const std::size_t n = node_x_.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double reach = lipschitz_ * (node_x_[i] - node_x_[i - 1]);
    node_value_[i] = upper ? std::min(node_value_[i], node_value_[i - 1] + reach)
                           : std::max(node_value_[i], node_value_[i - 1] - reach);
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    const double reach = lipschitz_ * (node_x_[i + 1] - node_x_[i]);
    node_value_[i] = upper ? std::min(node_value_[i], node_value_[i + 1] + reach)
                           : std::max(node_value_[i], node_value_[i + 1] - reach);
  }
}

double PiecewiseLinearBound::piece(std::size_t i, double x) const {
  const Anchor& an = anchors_.at(i);
  return kind_ == BoundKind::kMajorant
             ? majorant_piece(x, an.x, an.value, lipschitz_, delta_)
             : minorant_piece(x, an.x, an.value, lipschitz_, delta_);
}

double PiecewiseLinearBound::operator()(double x) const {
  if (node_x_.empty()) throw StateError("bound has no anchors");
  const double sign = kind_ == BoundKind::kMajorant ? 1.0 : -1.0;
  const auto it = std::upper_bound(node_x_.begin(), node_x_.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - node_x_.begin());
  if (hi == 0) return node_value_.front() + sign * lipschitz_ * (node_x_.front() - x);
  if (hi == node_x_.size()) {
    return node_value_.back() + sign * lipschitz_ * (x - node_x_.back());
  }
  const std::size_t lo = hi - 1;
  const double from_left = node_value_[lo] + sign * lipschitz_ * (x - node_x_[lo]);
  const double from_right = node_value_[hi] + sign * lipschitz_ * (node_x_[hi] - x);
  return kind_ == BoundKind::kMajorant ? std::min(from_left, from_right)
                                       : std::max(from_left, from_right);
}

double eval_bound(const PiecewiseLinearBound& bound, double x) { return bound(x); }

IntervalUnion strict_sublevel_set(const PiecewiseLinearBound& majorant,
                                  const IntervalUnion& region, double level) {
  if (majorant.kind() != BoundKind::kMajorant) {
    throw StateError("sublevel sets are defined for majorants only");
  }
  if (majorant.empty()) throw StateError("bound has no anchors");
  const auto xs = majorant.node_x();
  const auto vs = majorant.node_value();
  const double lip = majorant.lipschitz();
  const std::size_t n = xs.size();

  std::vector<Interval> parts;
  // Left tail, decreasing towards the first node.
  if (level > vs[0]) {
    parts.push_back({xs[0] - (level - vs[0]) / lip, xs[0], true, false});
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double x0 = xs[i - 1];
    const double x1 = xs[i];
    const double v0 = vs[i - 1];
    const double v1 = vs[i];
    const double peak = 0.5 * (v0 + v1) + 0.5 * lip * (x1 - x0);
    if (level > peak) {
      parts.push_back({x0, x1, false, false});
      continue;
    }
    if (level > v0) {
      const double p = std::min(x1, x0 + (level - v0) / lip);
      parts.push_back({x0, p, false, true});
    }
    if (level > v1) {
      const double q = std::max(x0, x1 - (level - v1) / lip);
      parts.push_back({q, x1, true, false});
    }
  }
  if (level > vs[n - 1]) {
    parts.push_back({xs[n - 1], xs[n - 1] + (level - vs[n - 1]) / lip, false, true});
  }
  return IntervalUnion(std::move(parts)).intersect(region);
}

namespace {

void cross_check(const PiecewiseLinearBound& majorant, const IntervalUnion& region,
                 const IntervalUnion& set, double level, int resolution) {
  for (const Interval& iv : region.intervals()) {
    const int points = iv.hi > iv.lo ? resolution : 1;
    for (int i = 0; i < points; ++i) {
      const double x =
          points == 1 ? iv.lo : iv.lo + (iv.hi - iv.lo) * i / (points - 1);
      if (!iv.contains(x)) continue;
      const double v = majorant(x);
      const double scale = std::max({1.0, std::abs(v), std::abs(level)});
      if (std::abs(v - level) <= 1e-9 * scale) continue;
      if ((v < level) != set.contains(x)) {
        throw InconsistencyError("exclusion set disagrees with grid thresholding");
      }
    }
  }
}

}  // namespace

ExclusionReport exclusion_regions(const PiecewiseLinearBound& majorant,
                                  const IntervalUnion& region, double g_star,
                                  double delta, int grid_resolution) {
  ExclusionReport report;
  report.reference = g_star;
  report.n_g = strict_sublevel_set(majorant, region, g_star);
  report.n_f = strict_sublevel_set(majorant, region, g_star - delta);
  if (grid_resolution > 0) {
    cross_check(majorant, region, report.n_g, g_star, grid_resolution);
    cross_check(majorant, region, report.n_f, g_star - delta, grid_resolution);
  }
  return report;
}

}  // namespace safeopt

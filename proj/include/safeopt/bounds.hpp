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

#ifndef SAFEOPT_BOUNDS_HPP_
#define SAFEOPT_BOUNDS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "safeopt/interval_union.hpp"

namespace safeopt {

// phi(x; c, v) = v - L |c - x| - 2 delta. Valid lower cone for g around a
// sample c whose best observation is v.
double minorant_piece(double x, double center, double value, double lipschitz,
                      double delta);
// gamma(x; c, v) = v + L |c - x| + 2 delta. Valid upper cone for g around a
// sample c whose worst observation is v.
double majorant_piece(double x, double center, double value, double lipschitz,
                      double delta);

enum class BoundKind { kMinorant, kMajorant };

struct Anchor {
  double x = 0.0;
  double value = 0.0;

  friend bool operator==(const Anchor&, const Anchor&) = default;
};

// Sawtooth envelope of cones: the max of minorant pieces or the min of
// majorant pieces over a set of anchors. Minorants are anchored with per-point
// maxima of the observations, majorants with per-point minima.
//
// Evaluation is O(log k): the envelope's values at the sorted anchor
// coordinates are precomputed, and between two adjacent anchors the envelope
// is the max (min) of the two neighbouring cones only.
class PiecewiseLinearBound {
 public:
  PiecewiseLinearBound(BoundKind kind, std::vector<Anchor> anchors,
                       double lipschitz, double delta);

  BoundKind kind() const { return kind_; }
  double lipschitz() const { return lipschitz_; }
  double delta() const { return delta_; }
  // Anchors as given to the constructor.
  const std::vector<Anchor>& anchors() const { return anchors_; }
  bool empty() const { return anchors_.empty(); }

  // Sorted distinct anchor coordinates and the envelope value at each.
  std::span<const double> node_x() const { return node_x_; }
  std::span<const double> node_value() const { return node_value_; }

  // The single cone of anchor i at x.
  double piece(std::size_t i, double x) const;
  // Throws StateError when there are no anchors.
  double operator()(double x) const;

 private:
  BoundKind kind_;
  std::vector<Anchor> anchors_;
  double lipschitz_;
  double delta_;
  std::vector<double> node_x_;
  std::vector<double> node_value_;
};

// Free-function form of PiecewiseLinearBound::operator().
double eval_bound(const PiecewiseLinearBound& bound, double x);

// {x in region : majorant(x) < level}, computed exactly from the sawtooth
// breakpoints. Endpoints where the majorant equals `level` are open.
IntervalUnion strict_sublevel_set(const PiecewiseLinearBound& majorant,
                                  const IntervalUnion& region, double level);

struct ExclusionReport {
  // Cannot contain a maximizer of g.
  IntervalUnion n_g;
  // Cannot contain a maximizer of f.
  IntervalUnion n_f;
  double reference = 0.0;
};

// N_g = {Gamma < g_star}, N_f = {Gamma < g_star - delta}, both within
// `region`. When grid_resolution > 0 the analytic sets are cross-checked
// against thresholding on a uniform grid of that many points per interval;
// a disagreement away from the level set throws InconsistencyError.
ExclusionReport exclusion_regions(const PiecewiseLinearBound& majorant,
                                  const IntervalUnion& region, double g_star,
                                  double delta, int grid_resolution = 0);

}  // namespace safeopt

#endif  // SAFEOPT_BOUNDS_HPP_

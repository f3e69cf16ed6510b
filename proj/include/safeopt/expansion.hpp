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

#ifndef SAFEOPT_EXPANSION_HPP_
#define SAFEOPT_EXPANSION_HPP_

#include <span>
#include <string_view>
#include <vector>

#include "safeopt/interval_union.hpp"
#include "safeopt/oracle.hpp"

namespace safeopt {

struct ExpansionParams {
  // Maximum observations collected at one boundary without an accepted move.
  int nu = 15;
  // Spread tolerance sigma, as a fraction of 2 delta.
  double sigma_fraction = 0.10;
  // Moves shorter than this are treated as repetitions.
  double eps_expand = 1e-3;

  void validate() const;
};

enum class Side { kLeft, kRight };
enum class SideStop { kRunning, kRepetitionBudget, kTolerance, kDomainEdge, kMerged };

std::string_view to_string(Side side);
std::string_view to_string(SideStop stop);

struct BoundaryState {
  Side side = Side::kLeft;
  double coordinate = 0.0;
  // Observations at `coordinate` since the last accepted move.
  std::vector<double> repetitions;
  SideStop stop = SideStop::kRunning;
  int moves = 0;

  bool finished() const { return stop != SideStop::kRunning; }
};

// Length a boundary may safely move outward after observing g there:
// max(0, (g - 2 delta - h) / L).
double expansion_step(double g_value, double threshold, double delta,
                      double lipschitz);

// True when at least two values are present and their spread reaches
// 2 delta - sigma, sigma = sigma_fraction * 2 delta.
bool tolerance_stop(std::span<const double> values, double delta,
                    double sigma_fraction);

struct SafeRegion {
  Interval interval;
  // Initial points whose expansions ended up in this region.
  std::vector<double> origins;
  BoundaryState left;
  BoundaryState right;
  // Neither side ever moved: the region is the initial point alone.
  bool no_expansion = false;
};

struct ExpansionResult {
  IntervalUnion region;
  std::vector<SafeRegion> regions;
  int iterations = 0;
};

// Grows certified-safe intervals outward from each initial point. Each
// iteration visits, in region order, every unfinished left then right
// boundary and observes g there once; an observation with g - 2 delta > h
// moves the boundary by expansion_step (clamped to [a, b]). Intervals that
// meet are merged and their inner boundaries retired. Every evaluated
// coordinate is a boundary of an interval already certified safe.
//
// Throws InputError for an empty point set or a point outside [a, b].
ExpansionResult expand(Oracle& oracle, std::span<const double> initial_points,
                       const ExpansionParams& params);

}  // namespace safeopt

#endif  // SAFEOPT_EXPANSION_HPP_

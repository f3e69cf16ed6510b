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

#ifndef SAFEOPT_GLOBAL_MAX_HPP_
#define SAFEOPT_GLOBAL_MAX_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "safeopt/bounds.hpp"
#include "safeopt/interval_union.hpp"
#include "safeopt/oracle.hpp"

namespace safeopt {

struct MaxParams {
  // A subregion stops once the interval holding the best characteristic is no
  // longer than this.
  double eps_max = 1e-3;
  // Repetition budget at a pending trial point.
  int nu = 15;
  // Give every subregion its own noise stream forked from the run seed.
  // Required for (and implied by) `parallel`.
  bool independent_streams = false;
  // Search subregions on separate threads. Results equal the sequential
  // independent-stream run.
  bool parallel = false;

  void validate() const;
};

struct Characteristic {
  // Peak of min(z_lo + L (x - x_lo), z_hi + L (x_hi - x)) on [x_lo, x_hi].
  double value = 0.0;
  // Where the peak is attained.
  double point = 0.0;
};

// Throws InconsistencyError when |z_hi - z_lo| > L (x_hi - x_lo), which valid
// majorant node values never produce.
Characteristic characteristic(double x_lo, double x_hi, double z_lo, double z_hi,
                              double lipschitz);

// z_i = min_j (check_j + L |x_i - x_j| + 2 delta) for anchors (x_j, check_j),
// evaluated term by term.
std::vector<double> initial_z(std::span<const Anchor> points, double lipschitz,
                              double delta);

enum class MaxStop { kAccuracy, kRepetitions, kDegenerate };
std::string_view to_string(MaxStop stop);

struct SearchNode {
  double x = 0.0;
  // Smallest observation at x.
  double check = 0.0;
  // Majorant value at x.
  double z = 0.0;
};

// Largest characteristic over consecutive node pairs, or -inf for fewer than
// two nodes.
double max_characteristic(std::span<const SearchNode> nodes, double lipschitz);

// Handed to the observer each time a trial point has been selected and
// before it is evaluated.
struct Selection {
  int subregion = 0;
  int iteration = 0;
  std::size_t interval = 0;
  double x_bar = 0.0;
  double r_max = 0.0;
  std::span<const SearchNode> nodes;
  const SampleLog* log = nullptr;
};
// Must be thread-safe when MaxParams::parallel is set.
using SelectionObserver = std::function<void(const Selection&)>;

struct SubregionResult {
  Interval interval;
  MaxStop stop = MaxStop::kDegenerate;
  int iterations = 0;
  int accepted = 0;
  std::vector<SearchNode> nodes;
};

struct BestEstimate {
  double x = 0.0;
  double g = 0.0;
};

struct MaxResult {
  std::vector<SubregionResult> subregions;
  BestEstimate best;
  // One majorant per subregion, anchored at every logged point inside it.
  std::vector<PiecewiseLinearBound> majorants;
  ExclusionReport exclusion;
};

// Piyavskii-type search for the maximum of g on each subregion of `region`,
// seeded with the samples already in the oracle's log. Each iteration picks
// the interval with the largest characteristic, observes g at its peak, and
// repeats the observation while it cannot lower the majorant there (up to
// the repetition budget). Only points between two samples of a safe
// subregion are ever evaluated.
//
// Throws InputError for an empty region.
MaxResult maximize(const IntervalUnion& region, Oracle& oracle, const MaxParams& params,
                   const SelectionObserver& observer = {});

// Argmax of the per-point maximum observation over logged points in region;
// ties go to the smallest coordinate. Throws InputError if none.
BestEstimate best_estimate(const SampleLog& log, const IntervalUnion& region);

}  // namespace safeopt

#endif  // SAFEOPT_GLOBAL_MAX_HPP_

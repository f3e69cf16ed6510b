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

#include "safeopt/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "safeopt/errors.hpp"

namespace safeopt {

void ExpansionParams::validate() const {
  if (nu < 1) throw InputError("expansion: nu must be at least 1");
  if (!(sigma_fraction >= 0.0 && sigma_fraction <= 1.0)) {
    throw InputError("expansion: sigma fraction must lie in [0, 1]");
  }
  if (!(eps_expand > 0.0)) throw InputError("expansion: eps_expand must be positive");
}

std::string_view to_string(Side side) { return side == Side::kLeft ? "left" : "right"; }

std::string_view to_string(SideStop stop) {
  switch (stop) {
    case SideStop::kRunning: return "running";
    case SideStop::kRepetitionBudget: return "repetition-budget";
    case SideStop::kTolerance: return "tolerance";
    case SideStop::kDomainEdge: return "domain-edge";
    case SideStop::kMerged: return "merged";
  }
  return "unknown";
}

double expansion_step(double g_value, double threshold, double delta,
                      double lipschitz) {
  const double margin = g_value - 2.0 * delta - threshold;
  return margin > 0.0 ? margin / lipschitz : 0.0;
}

bool tolerance_stop(std::span<const double> values, double delta,
                    double sigma_fraction) {
  if (values.size() < 2) return false;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double sigma = sigma_fraction * 2.0 * delta;
  return *hi - *lo >= 2.0 * delta - sigma;
}

namespace {

struct RegionSlot {
  std::size_t left;
  std::size_t right;
  std::vector<double> origins;
};

class Expander {
 public:
  Expander(Oracle& oracle, const ExpansionParams& params)
      : oracle_(oracle), problem_(oracle.problem()), params_(params) {}

  ExpansionResult run(std::span<const double> initial_points);

 private:
  void visit(std::size_t side_id, int iteration);
  std::size_t region_of(std::size_t side_id) const;
  void merge_after_move(std::size_t side_id);
  void retire(std::size_t side_id) { sides_[side_id].stop = SideStop::kMerged; }

  Oracle& oracle_;
  const Problem& problem_;
  const ExpansionParams& params_;
  std::vector<BoundaryState> sides_;
  std::vector<RegionSlot> regions_;
};

ExpansionResult Expander::run(std::span<const double> initial_points) {
  if (initial_points.empty()) throw InputError("expand: no initial points");
  std::vector<double> points(initial_points.begin(), initial_points.end());
  for (double x : points) {
    if (!problem_.in_domain(x)) {
      throw InputError("expand: initial point " + std::to_string(x) +
                       " lies outside the domain");
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  for (double x : points) {
    sides_.push_back({Side::kLeft, x, {}, SideStop::kRunning, 0});
    sides_.push_back({Side::kRight, x, {}, SideStop::kRunning, 0});
    regions_.push_back({sides_.size() - 2, sides_.size() - 1, {x}});
  }

  int iteration = 0;
  for (;;) {
    std::vector<std::size_t> order;
    for (const RegionSlot& r : regions_) {
      if (!sides_[r.left].finished()) order.push_back(r.left);
      if (!sides_[r.right].finished()) order.push_back(r.right);
    }
    if (order.empty()) break;
    for (std::size_t id : order) {
      if (!sides_[id].finished()) visit(id, iteration);
    }
    ++iteration;
  }

  ExpansionResult result;
  result.iterations = iteration;
  std::vector<Interval> parts;
  for (const RegionSlot& r : regions_) {
    SafeRegion region;
    region.left = sides_[r.left];
    region.right = sides_[r.right];
    region.interval = {region.left.coordinate, region.right.coordinate};
    region.origins = r.origins;
    region.no_expansion =
        r.origins.size() == 1 && region.left.moves == 0 && region.right.moves == 0;
    parts.push_back(region.interval);
    result.regions.push_back(std::move(region));
  }
  result.region = IntervalUnion(std::move(parts));
  return result;
}

std::size_t Expander::region_of(std::size_t side_id) const {
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    if (regions_[i].left == side_id || regions_[i].right == side_id) return i;
  }
  throw InconsistencyError("expand: boundary does not belong to a region");
}

void Expander::visit(std::size_t side_id, int iteration) {
  const double h = problem_.threshold;
  const double delta = problem_.noise_bound;
  const bool left = sides_[side_id].side == Side::kLeft;
  const double x = sides_[side_id].coordinate;

  TraceRecord tag;
  tag.phase = Phase::kExpansion;
  tag.subregion = static_cast<int>(region_of(side_id));
  tag.iteration = iteration;
  tag.side = std::string(to_string(sides_[side_id].side));
  const double g = oracle_.evaluate(x, std::move(tag));

  BoundaryState& s = sides_[side_id];
  const double edge = left ? problem_.a : problem_.b;
  if (x == edge) {
    s.stop = SideStop::kDomainEdge;
    oracle_.set_last_event("domain-edge");
    return;
  }

  const double step = expansion_step(g, h, delta, problem_.lipschitz);
  if (step > 0.0) {
    const double target = left ? std::max(edge, x - step) : std::min(edge, x + step);
    if (target != x && (std::abs(target - x) >= params_.eps_expand || target == edge)) {
      s.coordinate = target;
      s.repetitions.clear();
      ++s.moves;
      oracle_.set_last_event("moved");
      merge_after_move(side_id);
      return;
    }
  }

  s.repetitions.push_back(g);
  oracle_.set_last_event("repetition");
  if (static_cast<int>(s.repetitions.size()) >= params_.nu) {
    s.stop = SideStop::kRepetitionBudget;
  } else if (tolerance_stop(s.repetitions, delta, params_.sigma_fraction)) {
    s.stop = SideStop::kTolerance;
  }
}

void Expander::merge_after_move(std::size_t side_id) {
  std::size_t idx = region_of(side_id);
  if (sides_[side_id].side == Side::kRight) {
    while (idx + 1 < regions_.size() &&
           sides_[regions_[idx].right].coordinate >=
               sides_[regions_[idx + 1].left].coordinate) {
      RegionSlot& cur = regions_[idx];
      RegionSlot& next = regions_[idx + 1];
      retire(next.left);
      if (sides_[next.right].coordinate >= sides_[cur.right].coordinate) {
        retire(cur.right);
        cur.right = next.right;
      } else {
        retire(next.right);
      }
      cur.origins.insert(cur.origins.end(), next.origins.begin(), next.origins.end());
      regions_.erase(regions_.begin() + static_cast<std::ptrdiff_t>(idx) + 1);
    }
  } else {
    while (idx > 0 && sides_[regions_[idx].left].coordinate <=
                          sides_[regions_[idx - 1].right].coordinate) {
      RegionSlot& prev = regions_[idx - 1];
      RegionSlot& cur = regions_[idx];
      retire(prev.right);
      if (sides_[prev.left].coordinate <= sides_[cur.left].coordinate) {
        retire(cur.left);
      } else {
        retire(prev.left);
        prev.left = cur.left;
      }
      prev.right = cur.right;
      prev.origins.insert(prev.origins.end(), cur.origins.begin(), cur.origins.end());
      regions_.erase(regions_.begin() + static_cast<std::ptrdiff_t>(idx));
      --idx;
    }
  }
}

}  // namespace

ExpansionResult expand(Oracle& oracle, std::span<const double> initial_points,
                       const ExpansionParams& params) {
  params.validate();
  return Expander(oracle, params).run(initial_points);
}

}  // namespace safeopt

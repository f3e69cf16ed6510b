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

#include "safeopt/global_max.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <thread>

#include "safeopt/errors.hpp"

namespace safeopt {

void MaxParams::validate() const {
  if (!(eps_max > 0.0)) throw InputError("maximize: eps_max must be positive");
  if (nu < 1) throw InputError("maximize: nu must be at least 1");
}

std::string_view to_string(MaxStop stop) {
  switch (stop) {
    case MaxStop::kAccuracy: return "accuracy";
    case MaxStop::kRepetitions: return "repetitions";
    case MaxStop::kDegenerate: return "degenerate";
  }
  return "unknown";
}

Characteristic characteristic(double x_lo, double x_hi, double z_lo, double z_hi,
                              double lipschitz) {
  if (!(x_lo < x_hi)) throw InputError("characteristic: requires x_lo < x_hi");
  if (!(lipschitz > 0.0)) throw InputError("characteristic: L must be positive");
  const double width = x_hi - x_lo;
  const double reach = lipschitz * width;
  const double slack =
      1e-12 * (std::abs(z_lo) + std::abs(z_hi) + reach) + std::numeric_limits<double>::min();
  if (std::abs(z_hi - z_lo) > reach + slack) {
    throw InconsistencyError("characteristic: node values violate the Lipschitz bound");
  }
  Characteristic c;
  c.value = 0.5 * (z_lo + z_hi) + 0.5 * reach;
  c.point = std::clamp(0.5 * (x_hi + x_lo) + 0.5 * (z_hi - z_lo) / lipschitz, x_lo, x_hi);
  return c;
}

std::vector<double> initial_z(std::span<const Anchor> points, double lipschitz,
                              double delta) {
  std::vector<double> z(points.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const Anchor& p : points) {
      z[i] = std::min(z[i], majorant_piece(points[i].x, p.x, p.value, lipschitz, delta));
    }
  }
  return z;
}

double max_characteristic(std::span<const SearchNode> nodes, double lipschitz) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    best = std::max(best, characteristic(nodes[i - 1].x, nodes[i].x, nodes[i - 1].z,
                                         nodes[i].z, lipschitz)
                              .value);
  }
  return best;
}

BestEstimate best_estimate(const SampleLog& log, const IntervalUnion& region) {
  std::optional<BestEstimate> best;
  for (const SampleEntry& e : log.entries()) {
    if (!region.contains(e.x)) continue;
    if (!best || e.hat > best->g || (e.hat == best->g && e.x < best->x)) {
      best = BestEstimate{e.x, e.hat};
    }
  }
  if (!best) throw InputError("best_estimate: no logged point inside the region");
  return *best;
}

namespace {

struct ByValue {
  // larger R first; ties go to the leftmost interval
  bool operator()(const std::pair<double, double>& a,
                  const std::pair<double, double>& b) const {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  }
};

class SubregionSearch {
 public:
  SubregionSearch(int index, const Interval& interval, Oracle& oracle,
                  const MaxParams& params, const SelectionObserver& observer)
      : index_(index),
        interval_(interval),
        oracle_(oracle),
        params_(params),
        observer_(observer),
        lipschitz_(oracle.problem().lipschitz),
        delta_(oracle.problem().noise_bound) {}

  SubregionResult run();

 private:
  void seed_nodes();
  Characteristic interval_at(std::size_t i) const {
    return characteristic(nodes_[i - 1].x, nodes_[i].x, nodes_[i - 1].z, nodes_[i].z,
                          lipschitz_);
  }
  void drop(std::size_t i);
  void place(std::size_t i);
  void insert_node(std::size_t t, double x, double check);
  // Lowers node values with the cone of node s, which only reaches a
  // contiguous run of nodes around s.
  void propagate(std::size_t s);

  int index_;
  Interval interval_;
  Oracle& oracle_;
  const MaxParams& params_;
  const SelectionObserver& observer_;
  double lipschitz_;
  double delta_;
  std::vector<SearchNode> nodes_;
  std::vector<double> r_;  // r_[i] is R on [x_{i-1}, x_i], NaN when not queued
  std::set<std::pair<double, double>, ByValue> queue_;
};

void SubregionSearch::seed_nodes() {
  auto entries = oracle_.log().sorted_in(interval_.lo, interval_.hi);
  if (entries.size() < 2) {
    // A lone sample leaves no interval to search; both endpoints are
    // certified safe, so observe them.
    for (double x : {interval_.lo, interval_.hi}) {
      if (oracle_.log().find(x) != nullptr) continue;
      TraceRecord tag;
      tag.phase = Phase::kMaximization;
      tag.subregion = index_;
      tag.event = "endpoint-seed";
      oracle_.evaluate(x, std::move(tag));
    }
    entries = oracle_.log().sorted_in(interval_.lo, interval_.hi);
  }
  std::vector<Anchor> anchors;
  anchors.reserve(entries.size());
  for (const SampleEntry* e : entries) anchors.push_back({e->x, e->check});
  const std::vector<double> z = initial_z(anchors, lipschitz_, delta_);
  nodes_.clear();
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    nodes_.push_back({anchors[i].x, anchors[i].value, z[i]});
  }
  r_.assign(nodes_.size(), std::numeric_limits<double>::quiet_NaN());
  queue_.clear();
  for (std::size_t i = 1; i < nodes_.size(); ++i) place(i);
}

void SubregionSearch::drop(std::size_t i) {
  if (i == 0 || i >= nodes_.size() || std::isnan(r_[i])) return;
  queue_.erase({r_[i], nodes_[i - 1].x});
  r_[i] = std::numeric_limits<double>::quiet_NaN();
}

void SubregionSearch::place(std::size_t i) {
  if (i == 0 || i >= nodes_.size()) return;
  r_[i] = interval_at(i).value;
  queue_.insert({r_[i], nodes_[i - 1].x});
}

void SubregionSearch::insert_node(std::size_t t, double x, double check) {
  drop(t);
  // the majorant at x is fixed by the two neighbouring node values
  double z = check + 2.0 * delta_;
  z = std::min(z, nodes_[t - 1].z + lipschitz_ * (x - nodes_[t - 1].x));
  z = std::min(z, nodes_[t].z + lipschitz_ * (nodes_[t].x - x));
  const auto at = static_cast<std::ptrdiff_t>(t);
  nodes_.insert(nodes_.begin() + at, SearchNode{x, check, z});
  r_.insert(r_.begin() + at, std::numeric_limits<double>::quiet_NaN());
  propagate(t);
}

void SubregionSearch::propagate(std::size_t s) {
  const SearchNode src = nodes_[s];
  auto lowers = [&](std::size_t i) {
    return majorant_piece(nodes_[i].x, src.x, src.check, lipschitz_, delta_) < nodes_[i].z;
  };
  std::size_t lo = s;
  while (lo > 0 && lowers(lo - 1)) --lo;
  std::size_t hi = s;
  while (hi + 1 < nodes_.size() && lowers(hi + 1)) ++hi;
  for (std::size_t i = lo; i <= hi + 1; ++i) drop(i);
  for (std::size_t i = lo; i <= hi; ++i) {
    nodes_[i].z = std::min(
        nodes_[i].z, majorant_piece(nodes_[i].x, src.x, src.check, lipschitz_, delta_));
  }
  for (std::size_t i = lo; i <= hi + 1; ++i) place(i);
}

SubregionResult SubregionSearch::run() {
  SubregionResult result;
  result.interval = interval_;
  if (!(interval_.lo < interval_.hi)) {
    if (const SampleEntry* e = oracle_.log().find(interval_.lo)) {
      nodes_.push_back({e->x, e->check, e->check + 2.0 * delta_});
    } else {
      throw InconsistencyError("maximize: subregion has no samples");
    }
    result.stop = MaxStop::kDegenerate;
    result.nodes = nodes_;
    return result;
  }

  seed_nodes();
  int iteration = 0;
  for (;; ++iteration) {
    const double left = queue_.begin()->second;
    const auto it = std::lower_bound(
        nodes_.begin(), nodes_.end(), left,
        [](const SearchNode& n, double x) { return n.x < x; });
    const std::size_t t = static_cast<std::size_t>(it - nodes_.begin()) + 1;
    const Characteristic best = interval_at(t);
    if (nodes_[t].x - nodes_[t - 1].x <= params_.eps_max) {
      result.stop = MaxStop::kAccuracy;
      break;
    }

    const double x_bar = best.point;
    const double r_max = best.value;
    if (observer_) {
      observer_(Selection{index_, iteration, t, x_bar, r_max, nodes_, &oracle_.log()});
    }

    // The peak can sit on an existing node when the majorant is already
    // tight there; then only a strictly lower observation makes progress.
    std::optional<std::size_t> existing;
    if (x_bar == nodes_[t - 1].x) existing = t - 1;
    if (x_bar == nodes_[t].x) existing = t;
    if (existing && delta_ == 0.0) {
      // noiseless: the majorant peaks at a sampled value
      result.stop = MaxStop::kAccuracy;
      break;
    }

    bool accepted = false;
    for (int evaluations = 1;; ++evaluations) {
      TraceRecord tag;
      tag.phase = Phase::kMaximization;
      tag.subregion = index_;
      tag.iteration = iteration;
      tag.interval = static_cast<int>(t);
      tag.r_max = r_max;
      oracle_.evaluate(x_bar, std::move(tag));
      const double check = oracle_.log().find(x_bar)->check;
      const double apex = check + 2.0 * delta_;
      accepted = existing ? apex < r_max : apex <= r_max;
      oracle_.set_last_event(accepted ? "accepted" : "repeated");
      if (accepted || evaluations + 1 >= params_.nu) break;
    }
    if (!accepted) {
      result.stop = MaxStop::kRepetitions;
      ++iteration;
      break;
    }

    const double check = oracle_.log().find(x_bar)->check;
    if (existing) {
      nodes_[*existing].check = check;
      propagate(*existing);
    } else {
      insert_node(t, x_bar, check);
    }
    ++result.accepted;
  }
  result.iterations = iteration;
  result.nodes = nodes_;
  return result;
}

}  // namespace

MaxResult maximize(const IntervalUnion& region, Oracle& oracle, const MaxParams& params,
                   const SelectionObserver& observer) {
  params.validate();
  if (region.empty()) throw InputError("maximize: empty region");
  const auto& parts = region.intervals();
  MaxResult result;
  result.subregions.resize(parts.size());

  if (params.independent_streams || params.parallel) {
    std::vector<Oracle> children;
    children.reserve(parts.size());
    for (std::size_t j = 0; j < parts.size(); ++j) {
      children.push_back(oracle.fork(j + 1, parts[j].lo, parts[j].hi));
    }
    auto work = [&](std::size_t j) {
      result.subregions[j] =
          SubregionSearch(static_cast<int>(j), parts[j], children[j], params, observer).run();
    };
    if (params.parallel && parts.size() > 1) {
      std::vector<std::exception_ptr> errors(parts.size());
      std::vector<std::thread> threads;
      for (std::size_t j = 0; j < parts.size(); ++j) {
        threads.emplace_back([&, j] {
          try {
            work(j);
          } catch (...) {
            errors[j] = std::current_exception();
          }
        });
      }
      for (std::thread& th : threads) th.join();
      for (std::size_t j = 0; j < parts.size(); ++j) {
        oracle.absorb(children[j]);
      }
      for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    } else {
      for (std::size_t j = 0; j < parts.size(); ++j) {
        try {
          work(j);
        } catch (...) {
          oracle.absorb(children[j]);
          throw;
        }
        oracle.absorb(children[j]);
      }
    }
  } else {
    for (std::size_t j = 0; j < parts.size(); ++j) {
      result.subregions[j] =
          SubregionSearch(static_cast<int>(j), parts[j], oracle, params, observer).run();
    }
  }

  const double lipschitz = oracle.problem().lipschitz;
  const double delta = oracle.problem().noise_bound;
  result.best = best_estimate(oracle.log(), region);
  std::vector<Interval> n_g;
  std::vector<Interval> n_f;
  for (const Interval& part : parts) {
    std::vector<Anchor> anchors;
    for (const SampleEntry* e : oracle.log().sorted_in(part.lo, part.hi)) {
      anchors.push_back({e->x, e->check});
    }
    PiecewiseLinearBound majorant(BoundKind::kMajorant, std::move(anchors), lipschitz, delta);
    const ExclusionReport ex =
        exclusion_regions(majorant, IntervalUnion{part}, result.best.g, delta);
    n_g.insert(n_g.end(), ex.n_g.intervals().begin(), ex.n_g.intervals().end());
    n_f.insert(n_f.end(), ex.n_f.intervals().begin(), ex.n_f.intervals().end());
    result.majorants.push_back(std::move(majorant));
  }
  result.exclusion.reference = result.best.g;
  result.exclusion.n_g = IntervalUnion(std::move(n_g));
  result.exclusion.n_f = IntervalUnion(std::move(n_f));
  return result;
}

}  // namespace safeopt

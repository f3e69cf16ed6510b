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

#ifndef SAFEOPT_TESTBED_HPP_
#define SAFEOPT_TESTBED_HPP_

#include <cstdint>
#include <vector>

#include "safeopt/problem.hpp"

namespace safeopt {

inline constexpr int kCatalogSize = 18;
inline constexpr int kDefaultGridPoints = 100000;

// Catalog problem 1..18 with its tabulated domain, Lipschitz constant and
// threshold. The noise bound is left at zero; see with_noise_fraction.
// Throws InputError for an unknown id.
Problem get_problem(int id);

struct Range {
  double min = 0.0;
  double max = 0.0;
  double argmax = 0.0;
  double span() const { return max - min; }
};

// Extremes of f over a uniform grid of `grid_points` points (>= 1000).
Range estimate_range(const Objective& f, double a, double b,
                     int grid_points = kDefaultGridPoints);

// Largest difference quotient between neighbouring grid points.
double grid_lipschitz(const Objective& f, double a, double b, int grid_points);

// grid_lipschitz(...) <= L.
bool verify_lipschitz(const Objective& f, double a, double b, double lipschitz,
                      int grid_points = kDefaultGridPoints);

// Copy of `problem` with delta = fraction * (range of f), and the grid
// maximizer filled in as the reference optimum.
Problem with_noise_fraction(Problem problem, double fraction,
                            int grid_points = kDefaultGridPoints);

// Grid points where f(x) - delta >= h + margin.
std::vector<double> safe_candidates(const Problem& problem, double margin,
                                    int grid_points = 10000);

// One candidate drawn uniformly with a generator seeded from `seed`.
// Throws InputError when no candidate exists.
double pick_initial_point(const Problem& problem, double margin, std::uint64_t seed,
                          int grid_points = 10000);

}  // namespace safeopt

#endif  // SAFEOPT_TESTBED_HPP_

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

#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "safeopt/bounds.hpp"
#include "safeopt/errors.hpp"

using namespace safeopt;
using safeopt::testing::brute_bound;

TEST_SUITE("bounds") {
  TEST_CASE("minorant piece") {
    CHECK(minorant_piece(0, 0, 3, 2, 0.25) == doctest::Approx(2.5));
    CHECK(minorant_piece(1, 0, 3, 2, 0.25) == doctest::Approx(0.5));
    CHECK(minorant_piece(1.5, 2, 4, 3, 0.0) == doctest::Approx(4 - 1.5));
  }

  TEST_CASE("majorant piece") {
    CHECK(majorant_piece(0, 0, 1, 2, 0.25) == doctest::Approx(1.5));
    CHECK(majorant_piece(1, 0, 1, 2, 0.25) == doctest::Approx(3.5));
    CHECK(majorant_piece(7, 7, 1.25, 2, 0.0) == 1.25);
  }

  TEST_CASE("two anchors meet in the middle") {
    const std::vector<Anchor> anchors{{0, 2}, {1, 2}};
    CHECK(eval_bound(PiecewiseLinearBound(BoundKind::kMinorant, anchors, 1, 0), 0.5) ==
          doctest::Approx(1.5));
    CHECK(eval_bound(PiecewiseLinearBound(BoundKind::kMajorant, anchors, 1, 0), 0.5) ==
          doctest::Approx(2.5));
  }

  TEST_CASE("single anchor equals its piece") {
    const PiecewiseLinearBound lo(BoundKind::kMinorant, {{0.3, 1.0}}, 2.0, 0.1);
    const PiecewiseLinearBound hi(BoundKind::kMajorant, {{0.3, 1.0}}, 2.0, 0.1);
    for (double x = -2; x <= 2; x += 0.125) {
      CHECK(lo(x) == doctest::Approx(minorant_piece(x, 0.3, 1.0, 2.0, 0.1)));
      CHECK(hi(x) == doctest::Approx(majorant_piece(x, 0.3, 1.0, 2.0, 0.1)));
    }
  }

  TEST_CASE("empty bound cannot be evaluated") {
    const PiecewiseLinearBound b(BoundKind::kMajorant, {}, 1.0, 0.0);
    CHECK(b.empty());
    CHECK_THROWS_AS(b(0.0), StateError);
  }

  TEST_CASE("matches the explicit envelope on random configurations") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
      const int k = 1 + static_cast<int>(unit(rng) * 40);
      const double L = 0.1 + 20 * unit(rng);
      const double delta = unit(rng) < 0.2 ? 0.0 : unit(rng);
      std::vector<Anchor> anchors;
      for (int i = 0; i < k; ++i) anchors.push_back({-5 + 10 * unit(rng), -3 + 6 * unit(rng)});
      for (BoundKind kind : {BoundKind::kMinorant, BoundKind::kMajorant}) {
        const PiecewiseLinearBound b(kind, anchors, L, delta);
        for (int q = 0; q < 50; ++q) {
          const double x = -6 + 12 * unit(rng);
          worst = std::max(worst, std::abs(b(x) - brute_bound(kind, anchors, L, delta, x)));
        }
        for (const Anchor& a : anchors) {
          worst = std::max(worst, std::abs(b(a.x) - brute_bound(kind, anchors, L, delta, a.x)));
        }
      }
    }
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("bounds are Lipschitz with the same constant") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      const double L = 0.5 + 5 * unit(rng);
      std::vector<Anchor> anchors;
      for (int i = 0; i < 12; ++i) anchors.push_back({10 * unit(rng), 4 * unit(rng)});
      for (BoundKind kind : {BoundKind::kMinorant, BoundKind::kMajorant}) {
        const PiecewiseLinearBound b(kind, anchors, L, 0.3);
        for (int q = 0; q < 50; ++q) {
          const double x1 = 10 * unit(rng);
          const double x2 = 10 * unit(rng);
          CHECK(std::abs(b(x1) - b(x2)) <= L * std::abs(x1 - x2) + 1e-9);
        }
      }
    }
  }

  TEST_CASE("flat majorant at the incumbent excludes nothing") {
    // nearly flat, never below 5 on [0, 1]
    const PiecewiseLinearBound gamma(BoundKind::kMajorant, {{0, 5}, {1, 5}}, 1e-12, 0.0);
    const ExclusionReport r = exclusion_regions(gamma, IntervalUnion{{0, 1}}, 5.0, 0.0);
    CHECK(r.n_g.empty());
    CHECK(r.n_f.empty());
  }

  TEST_CASE("single anchor exclusion is an open interval") {
    const PiecewiseLinearBound gamma(BoundKind::kMajorant, {{0, 0}}, 1.0, 0.0);
    const ExclusionReport r = exclusion_regions(gamma, IntervalUnion{{-2, 2}}, 1.0, 0.0, 20000);
    REQUIRE(r.n_g.size() == 1);
    const Interval iv = r.n_g.intervals()[0];
    CHECK(iv.lo == doctest::Approx(-1.0));
    CHECK(iv.hi == doctest::Approx(1.0));
    CHECK(iv.lo_open);
    CHECK(iv.hi_open);
    CHECK(r.n_f == r.n_g);
  }

  TEST_CASE("noise shifts the f exclusion down by delta") {
    const PiecewiseLinearBound gamma(BoundKind::kMajorant, {{0, 0}}, 1.0, 0.25);
    const ExclusionReport r = exclusion_regions(gamma, IntervalUnion{{-3, 3}}, 1.5, 0.25, 20000);
    // Γ(x) = 0.5 + |x|: N_g = {Γ < 1.5} = (-1, 1), N_f = {Γ < 1.25} = (-0.75, 0.75)
    REQUIRE(r.n_g.size() == 1);
    REQUIRE(r.n_f.size() == 1);
    CHECK(r.n_g.intervals()[0].hi == doctest::Approx(1.0));
    CHECK(r.n_f.intervals()[0].hi == doctest::Approx(0.75));
    CHECK(r.n_g.includes(r.n_f));
  }

  TEST_CASE("exclusion agrees with grid thresholding on random envelopes") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Anchor> anchors;
      for (int i = 0; i < 8; ++i) anchors.push_back({4 * unit(rng), 2 * unit(rng)});
      const PiecewiseLinearBound gamma(BoundKind::kMajorant, anchors, 3.0, 0.1);
      const IntervalUnion region{{0.5, 1.5}, {2.0, 3.9}};
      const double level = 1.0 + unit(rng);
      const IntervalUnion n_g = strict_sublevel_set(gamma, region, level);
      for (int q = 0; q <= 4000; ++q) {
        const double x = 4.0 * q / 4000;
        if (!region.contains(x)) continue;
        const double v = gamma(x);
        if (std::abs(v - level) < 1e-9) continue;
        CHECK(n_g.contains(x) == (v < level));
      }
    }
  }
}

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
#include "safeopt/errors.hpp"
#include "safeopt/expansion.hpp"
#include "safeopt/global_max.hpp"
#include "safeopt/testbed.hpp"

using namespace safeopt;

namespace {

Problem make_problem(Objective f, double a, double b, double L, double delta, double h) {
  Problem p;
  p.name = "test";
  p.f = std::move(f);
  p.a = a;
  p.b = b;
  p.lipschitz = L;
  p.noise_bound = delta;
  p.threshold = h;
  return p;
}

double envelope(std::span<const SearchNode> nodes, double L, double x) {
  double v = INFINITY;
  for (const SearchNode& n : nodes) v = std::min(v, n.z + L * std::abs(x - n.x));
  return v;
}

}  // namespace

TEST_SUITE("global_max") {
  TEST_CASE("characteristic by hand") {
    const Characteristic c = characteristic(0, 1, 2, 4, 6);
    CHECK(c.value == doctest::Approx(6.0));
    CHECK(c.point == doctest::Approx(2.0 / 3.0));
  }

  TEST_CASE("symmetric characteristic peaks in the middle") {
    for (double L : {0.5, 3.0, 100.0}) {
      const Characteristic c = characteristic(0, 1, 1.25, 1.25, L);
      CHECK(c.value == doctest::Approx(1.25 + L / 2));
      CHECK(c.point == doctest::Approx(0.5));
    }
  }

  TEST_CASE("characteristic matches a grid search of the two cones") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      const double L = 0.1 + 10 * unit(rng);
      const double lo = -1 + unit(rng);
      const double hi = lo + 0.01 + 2 * unit(rng);
      const double z_lo = unit(rng);
      const double z_hi = z_lo + L * (hi - lo) * (2 * unit(rng) - 1);
      const Characteristic c = characteristic(lo, hi, z_lo, z_hi, L);
      const auto cones = [&](double x) { return std::min(z_lo + L * (x - lo), z_hi + L * (hi - x)); };
      const testing::GridMax g = testing::refined_max(cones, lo, hi, L, 10000);
      CHECK(std::abs(c.value - g.value) <= 1e-6);
      CHECK(std::abs(c.point - g.x) <= 1e-6);
    }
  }

  TEST_CASE("inconsistent node values are reported") {
    CHECK_THROWS_AS(characteristic(0, 1, 0, 5, 1), InconsistencyError);
    CHECK_THROWS_AS(characteristic(1, 1, 0, 0, 1), InputError);
  }

  TEST_CASE("initial z") {
    const std::vector<Anchor> one{{0.5, 3.0}};
    CHECK(initial_z(one, 2.0, 0.25) == std::vector<double>{3.5});
    const std::vector<Anchor> two{{0, 0}, {1, 10}};
    CHECK(initial_z(two, 1.0, 0.0) == std::vector<double>{0, 1});
    const std::vector<Anchor> flat{{0, 2}, {0.3, 2}, {1, 2}};
    CHECK(initial_z(flat, 4.0, 0.0) == std::vector<double>{2, 2, 2});
  }

  TEST_CASE("best estimate") {
    SampleLog log;
    log.append(0.1, 2.0, Phase::kExpansion, 0);
    log.append(0.5, 3.2, Phase::kExpansion, 0);
    log.append(0.9, 1.0, Phase::kExpansion, 0);
    const BestEstimate b = best_estimate(log, IntervalUnion{{0, 1}});
    CHECK(b.x == 0.5);
    CHECK(b.g == 3.2);

    SampleLog single;
    single.append(0.4, -1.0, Phase::kExpansion, 0);
    CHECK(best_estimate(single, IntervalUnion{{0, 1}}).x == 0.4);

    SampleLog tie;
    tie.append(0.9, 2.0, Phase::kExpansion, 0);
    tie.append(0.1, 2.0, Phase::kExpansion, 0);
    CHECK(best_estimate(tie, IntervalUnion{{0, 1}}).x == 0.1);

    CHECK_THROWS_AS(best_estimate(tie, IntervalUnion{{2, 3}}), InputError);
  }

  TEST_CASE("tent objective finds its apex first") {
    Oracle o(make_problem([](double x) { return 1 - std::abs(x - 0.5); }, 0, 1, 1, 0, -10),
             NoiseModel{NoiseKind::kZero, 0}, 1);
    o.evaluate(0.0);
    o.evaluate(1.0);
    std::vector<Selection> seen;
    const MaxResult r = maximize(IntervalUnion{{0, 1}}, o, MaxParams{1e-3, 1},
                                 [&](const Selection& s) { seen.push_back(s); });
    REQUIRE(!seen.empty());
    CHECK(seen[0].x_bar == doctest::Approx(0.5));
    CHECK(seen[0].r_max == doctest::Approx(1.0));
    CHECK(o.trace()[2].x == doctest::Approx(0.5));
    CHECK(o.trace()[2].value == doctest::Approx(1.0));
    CHECK(r.best.x == doctest::Approx(0.5));
    CHECK(r.best.g == doctest::Approx(1.0));
    CHECK(r.subregions[0].stop == MaxStop::kAccuracy);
  }

  TEST_CASE("single point subregion is degenerate") {
    Oracle o(make_problem([](double x) { return x; }, 0, 1, 1, 0, -10),
             NoiseModel{NoiseKind::kZero, 0}, 1);
    o.evaluate(0.5);
    const MaxResult r = maximize(IntervalUnion{{0.5, 0.5}}, o, MaxParams{});
    CHECK(r.subregions[0].stop == MaxStop::kDegenerate);
    CHECK(o.evaluations() == 1);
    CHECK(r.best.x == 0.5);
  }

  TEST_CASE("lone sample gets endpoint seeds") {
    Oracle o(make_problem([](double x) { return -x * x; }, -1, 1, 2, 0, -10),
             NoiseModel{NoiseKind::kZero, 0}, 1);
    o.evaluate(0.25);
    maximize(IntervalUnion{{-0.5, 0.5}}, o, MaxParams{});
    REQUIRE(o.trace().size() >= 3);
    CHECK(o.trace()[1].event == "endpoint-seed");
    CHECK(o.trace()[2].event == "endpoint-seed");
  }

  TEST_CASE("selections respect the incumbent and the majorant shrinks") {
    const Problem p = with_noise_fraction(get_problem(3), 0.1);
    Oracle o(p, NoiseModel{NoiseKind::kUniform, p.noise_bound}, 12);
    const std::vector<double> init{pick_initial_point(p, 0.2, 12)};
    const ExpansionResult ex = expand(o, init, ExpansionParams{});
    std::vector<double> prev;
    int checks = 0;
    maximize(ex.region, o, MaxParams{}, [&](const Selection& s) {
      const Interval part = ex.region.intervals()[s.subregion];
      const BestEstimate inc = best_estimate(*s.log, IntervalUnion{part});
      CHECK(envelope(s.nodes, p.lipschitz, s.x_bar) >= inc.g - 1e-9);
      const auto gamma = [&](double x) { return envelope(s.nodes, p.lipschitz, x); };
      const testing::GridMax g = testing::refined_max(gamma, part.lo, part.hi, p.lipschitz, 20000);
      CHECK(std::abs(g.value - s.r_max) <= 1e-6);
      std::vector<double> now;
      for (int i = 0; i <= 500; ++i) now.push_back(gamma(part.lo + part.length() * i / 500));
      if (!prev.empty() && prev.size() == now.size()) {
        for (std::size_t i = 0; i < now.size(); ++i) CHECK(now[i] <= prev[i] + 1e-9);
      }
      prev = now;
      ++checks;
    });
    CHECK(checks > 3);
    CHECK(o.sentinel().violations() == 0);
  }

  TEST_CASE("incremental node values and selection match a full rescan") {
    for (NoiseKind kind : {NoiseKind::kUniform, NoiseKind::kFixedBiasMinus}) {
      const Problem p = with_noise_fraction(get_problem(4), 0.1);
      Oracle o(p, NoiseModel{kind, p.noise_bound}, 3);
      const std::vector<double> init{pick_initial_point(p, 3 * p.noise_bound + 0.1, 3)};
      const ExpansionResult ex = expand(o, init, ExpansionParams{});
      const double L = p.lipschitz;
      const double d = p.noise_bound;
      int selections = 0;
      const MaxResult r = maximize(ex.region, o, MaxParams{}, [&](const Selection& s) {
        std::size_t t = 1;
        double best = -INFINITY;
        for (std::size_t i = 1; i < s.nodes.size(); ++i) {
          const double R = 0.5 * (s.nodes[i - 1].z + s.nodes[i].z) +
                           0.5 * L * (s.nodes[i].x - s.nodes[i - 1].x);
          if (R > best) {
            best = R;
            t = i;
          }
        }
        CHECK(s.interval == t);
        CHECK(s.r_max == doctest::Approx(best).epsilon(1e-12));
        ++selections;
      });
      CHECK(selections > 10);
      for (const SubregionResult& sr : r.subregions) {
        for (const SearchNode& n : sr.nodes) {
          double z = INFINITY;
          for (const SearchNode& m : sr.nodes) z = std::min(z, m.check + L * std::abs(n.x - m.x) + 2 * d);
          CHECK(n.z == doctest::Approx(z).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("noiseless single-shot search converges") {
    const Problem p = with_noise_fraction(get_problem(5), 0.0);
    Oracle o(p, NoiseModel{NoiseKind::kZero, 0}, 1);
    const std::vector<double> init{pick_initial_point(p, 0.1, 1)};
    const ExpansionResult ex = expand(o, init, ExpansionParams{1, 0.1, 1e-3});
    const MaxResult r = maximize(ex.region, o, MaxParams{1e-3, 1});
    for (const SubregionResult& s : r.subregions) CHECK(s.stop != MaxStop::kRepetitions);
    double top = -INFINITY;
    for (double x : testing::grid_over(ex.region, 100000)) top = std::max(top, p.f(x));
    CHECK(r.best.g >= top - p.lipschitz * 1e-3);
  }

  TEST_CASE("parallel subregions equal sequential independent streams") {
    const Problem p = with_noise_fraction(get_problem(13), 0.1);
    auto go = [&](bool parallel) {
      Oracle o(p, NoiseModel{NoiseKind::kUniform, p.noise_bound}, 8);
      const std::vector<double> safe = safe_candidates(p, p.noise_bound);
      REQUIRE(safe.size() > 2);
      const std::vector<double> init{safe.front(), safe.back()};
      const ExpansionResult ex = expand(o, init, ExpansionParams{});
      MaxParams mp;
      mp.independent_streams = true;
      mp.parallel = parallel;
      const MaxResult r = maximize(ex.region, o, mp);
      return std::make_pair(o.trace(), r.best.g);
    };
    const auto seq = go(false);
    const auto par = go(true);
    CHECK(seq.first == par.first);
    CHECK(seq.second == par.second);
  }

  TEST_CASE("bad parameters are rejected") {
    CHECK_THROWS_AS((MaxParams{0.0, 15}.validate()), InputError);
    CHECK_THROWS_AS((MaxParams{1e-3, 0}.validate()), InputError);
  }
}

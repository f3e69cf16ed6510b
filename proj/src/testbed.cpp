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

#include "safeopt/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "safeopt/errors.hpp"

namespace safeopt {

namespace {

constexpr double kPi = std::numbers::pi;

Problem make(int id, std::string name, Objective f, double a, double b, double lipschitz,
             double threshold) {
  Problem p;
  p.id = id;
  p.name = std::move(name);
  p.f = std::move(f);
  p.a = a;
  p.b = b;
  p.lipschitz = lipschitz;
  p.threshold = threshold;
  return p;
}

}  // namespace

Problem get_problem(int id) {
  switch (id) {
    case 1:
      return make(
          1, "sextic polynomial",
          [](double x) {
            return ((((((-1.0 / 6.0) * x + 52.0 / 25.0) * x - 39.0 / 80.0) * x - 71.0 / 10.0) *
                         x +
                     79.0 / 20.0) *
                        x +
                    1.0) *
                       x -
                   0.1;
          },
          -1.5, 11.0, 13870.0, 2974.180);
    case 2:
      return make(
          2, "-sin^3 x - cos^3 x",
          [](double x) {
            const double s = std::sin(x);
            const double c = std::cos(x);
            return -s * s * s - c * c * c;
          },
          0.0, 6.28, 2.2, -0.800);
    case 3:
      return make(
          3, "x - sin 3x + 1", [](double x) { return x - std::sin(3.0 * x) + 1.0; }, 0.0, 6.5,
          4.0, 1.202);
    case 4:
      return make(
          4, "(x^2 - 5x + 6) / (x^2 + 1)",
          [](double x) { return (x * x - 5.0 * x + 6.0) / (x * x + 1.0); }, -5.0, 5.0, 6.5,
          0.671);
    case 5:
      return make(
          5, "-sin x - sin(10x/3)",
          [](double x) { return -std::sin(x) - std::sin(10.0 * x / 3.0); }, 2.7, 7.5, 4.29,
          -0.609);
    case 6:
      return make(
          6, "(-3x + 1.4) sin 18x",
          [](double x) { return (-3.0 * x + 1.4) * std::sin(18.0 * x); }, 0.0, 1.2, 36.0,
          -1.271);
    case 7:
      return make(
          7, "(x + sin x) exp(-x^2)",
          [](double x) { return (x + std::sin(x)) * std::exp(-x * x); }, -10.0, 10.0, 2.5,
          -0.659);
    case 8:
      return make(
          8, "-sin x - sin(2x/3)",
          [](double x) { return -std::sin(x) - std::sin(2.0 * x / 3.0); }, 3.1, 20.4, 1.7,
          -1.483);
    case 9:
      return make(
          9, "exp(-x) sin 2 pi x",
          [](double x) { return std::exp(-x) * std::sin(2.0 * kPi * x); }, 0.0, 4.0, 6.5,
          -0.347);
    case 10:
      return make(
          10, "-exp(-x) sin 2 pi x + 0.5",
          [](double x) { return -std::exp(-x) * std::sin(2.0 * kPi * x) + 0.5; }, 0.0, 4.0,
          6.5, -0.154);
    case 11:
      return make(
          11, "sum i sin((i+1)x + i) + 3",
          [](double x) {
            double sum = 0.0;
            for (int i = 1; i <= 5; ++i) sum += i * std::sin((i + 1) * x + i);
            return sum + 3.0;
          },
          -10.0, 10.0, 68.42, -24.335);  // table: 67, sup |f'| = 68.419
    case 12:
      return make(
          12, "cos x - sin 5x + 1",
          [](double x) { return std::cos(x) - std::sin(5.0 * x) + 1.0; }, 0.0, 7.0, 5.952,
          -0.545);  // table: 5.951, sup |f'| = 5.95144
    case 13:
      return make(
          13, "cos 5x for x <= 3pi/2, else cos x",
          [](double x) { return x <= 1.5 * kPi ? std::cos(5.0 * x) : std::cos(x); }, 0.0,
          18.0, 5.0, -0.800);  // table: 4.999
    case 14:
      return make(
          14, "sin x for x <= pi, else sin 5x",
          [](double x) { return x <= kPi ? std::sin(x) : std::sin(5.0 * x); }, -10.0, 10.0,
          5.0, -0.800);  // table: 4.999
    case 15:
      return make(
          15, "-sum cos((i+1)x)",
          [](double x) {
            double sum = 0.0;
            for (int i = 1; i <= 5; ++i) sum += std::cos((i + 1) * x);
            return -sum;
          },
          -10.0, 10.0, 18.12, -4.229);  // table: 18.119, sup |f'| = 18.1198
    case 16:
      return make(
          16, "x |sin x| + 6", [](double x) { return x * std::abs(std::sin(x)) + 6.0; },
          -10.0, 10.0, 9.632, -0.332);
    case 17:
      return make(
          17, "|x sin x| - 1.5", [](double x) { return std::abs(x * std::sin(x)) - 1.5; },
          -10.0, 10.0, 9.632, -0.709);
    case 18:
      return make(
          18, "sin x if sin x > cos x, else cos x",
          [](double x) {
            const double s = std::sin(x);
            const double c = std::cos(x);
            return s > c ? s : c;
          },
          -10.0, 10.0, 1.0, -0.519);
    default:
      throw InputError("unknown catalog problem id " + std::to_string(id));
  }
}

Range estimate_range(const Objective& f, double a, double b, int grid_points) {
  if (grid_points < 1000) throw InputError("estimate_range: need at least 1000 points");
  Range r;
  r.min = r.max = f(a);
  r.argmax = a;
  for (int i = 1; i < grid_points; ++i) {
    const double x = a + (b - a) * i / (grid_points - 1);
    const double v = f(x);
    if (v < r.min) r.min = v;
    if (v > r.max) {
      r.max = v;
      r.argmax = x;
    }
  }
  return r;
}

double grid_lipschitz(const Objective& f, double a, double b, int grid_points) {
  if (grid_points < 2) throw InputError("grid_lipschitz: need at least 2 points");
  double best = 0.0;
  double prev_x = a;
  double prev_v = f(a);
  for (int i = 1; i < grid_points; ++i) {
    const double x = a + (b - a) * i / (grid_points - 1);
    const double v = f(x);
    best = std::max(best, std::abs(v - prev_v) / (x - prev_x));
    prev_x = x;
    prev_v = v;
  }
  return best;
}

bool verify_lipschitz(const Objective& f, double a, double b, double lipschitz,
                      int grid_points) {
  return grid_lipschitz(f, a, b, grid_points) <= lipschitz * (1.0 + 1e-9);
}

Problem with_noise_fraction(Problem problem, double fraction, int grid_points) {
  if (!(fraction >= 0.0)) throw InputError("noise fraction must be nonnegative");
  const Range r = estimate_range(problem.f, problem.a, problem.b, grid_points);
  problem.noise_bound = fraction * r.span();
  problem.true_max_x = r.argmax;
  problem.true_max_f = r.max;
  return problem;
}

std::vector<double> safe_candidates(const Problem& problem, double margin, int grid_points) {
  std::vector<double> out;
  for (int i = 0; i < grid_points; ++i) {
    const double x = problem.a + (problem.b - problem.a) * i / (grid_points - 1);
    if (problem.f(x) - problem.noise_bound >= problem.threshold + margin) out.push_back(x);
  }
  return out;
}

double pick_initial_point(const Problem& problem, double margin, std::uint64_t seed,
                          int grid_points) {
  const std::vector<double> candidates = safe_candidates(problem, margin, grid_points);
  if (candidates.empty()) {
    throw InputError("no grid point clears the threshold by the requested margin");
  }
  std::mt19937_64 engine(mix_seed(seed, 0xC0FFEE));
  // Multiply-shift keeps the draw independent of library distributions.
  const auto index = static_cast<std::size_t>(
      (static_cast<unsigned __int128>(engine()) * candidates.size()) >> 64);
  return candidates[index];
}

}  // namespace safeopt

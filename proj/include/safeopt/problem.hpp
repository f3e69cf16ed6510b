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

#ifndef SAFEOPT_PROBLEM_HPP_
#define SAFEOPT_PROBLEM_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace safeopt {

using Objective = std::function<double(double)>;

// A univariate safe maximization instance: maximize g = f + noise over the
// region where g stays above `threshold`, with f Lipschitz on [a, b].
struct Problem {
  int id = 0;
  std::string name;
  Objective f;
  double a = 0.0;
  double b = 1.0;
  double lipschitz = 1.0;
  // Known bound on |noise|. Zero is accepted for noiseless tests.
  double noise_bound = 0.0;
  double threshold = 0.0;
  // Reference maximizer of f on [a, b]; testing only.
  std::optional<double> true_max_x;
  std::optional<double> true_max_f;

  bool in_domain(double x) const { return x >= a && x <= b; }
  // Throws InputError when a < b, L > 0, delta >= 0 or f is missing.
  void validate() const;
};

enum class NoiseKind {
  kZero,
  kUniform,
  kClippedGaussian,
  kFixedBiasPlus,
  kFixedBiasMinus,
  // +delta, -delta, +delta, ... in call order; used to exhibit that the
  // observed function is not Lipschitz.
  kAlternatingBias,
};

std::string_view to_string(NoiseKind kind);
// Throws InputError on unknown names.
NoiseKind noise_kind_from_string(std::string_view name);

struct NoiseModel {
  NoiseKind kind = NoiseKind::kUniform;
  double bound = 0.0;
  // Pre-clip standard deviation of the clipped Gaussian, as a fraction of
  // `bound`.
  double gaussian_sigma_fraction = 0.5;
};

// Deterministic per-seed noise stream. Every draw satisfies |xi| <= bound.
class NoiseSource {
 public:
  NoiseSource(NoiseModel model, std::uint64_t seed);

  double draw();
  const NoiseModel& model() const { return model_; }

 private:
  // Uniform on [0, 1) with 53 random bits; independent of the standard
  // library's distribution implementations so streams match across
  // toolchains.
  double unit();

  NoiseModel model_;
  std::mt19937_64 engine_;
  std::uint64_t calls_ = 0;
};

// splitmix64 finalizer; used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace safeopt

#endif  // SAFEOPT_PROBLEM_HPP_

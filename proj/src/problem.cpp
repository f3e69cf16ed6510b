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

#include "safeopt/problem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "safeopt/errors.hpp"

namespace safeopt {

void Problem::validate() const {
  if (!f) throw InputError("problem has no objective");
  if (!(a < b)) throw InputError("problem domain requires a < b");
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
    throw InputError("Lipschitz constant must be positive and finite");
  }
  if (!(noise_bound >= 0.0) || !std::isfinite(noise_bound)) {
    throw InputError("noise bound must be nonnegative and finite");
  }
  if (!std::isfinite(threshold)) throw InputError("threshold must be finite");
}

namespace {

constexpr std::array<std::pair<NoiseKind, std::string_view>, 6> kNoiseNames{{
    {NoiseKind::kZero, "zero"},
    {NoiseKind::kUniform, "uniform"},
    {NoiseKind::kClippedGaussian, "clipped-gaussian"},
    {NoiseKind::kFixedBiasPlus, "fixed-bias-plus"},
    {NoiseKind::kFixedBiasMinus, "fixed-bias-minus"},
    {NoiseKind::kAlternatingBias, "alternating-bias"},
}};

}  // namespace

std::string_view to_string(NoiseKind kind) {
  for (const auto& [k, name] : kNoiseNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

NoiseKind noise_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kNoiseNames) {
    if (n == name) return k;
  }
  throw InputError("unknown noise model '" + std::string(name) + "'");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

NoiseSource::NoiseSource(NoiseModel model, std::uint64_t seed)
    : model_(model), engine_(seed) {
  if (!(model_.bound >= 0.0) || !std::isfinite(model_.bound)) {
    throw InputError("noise bound must be nonnegative and finite");
  }
  if (!(model_.gaussian_sigma_fraction > 0.0)) {
    throw InputError("clipped-gaussian sigma fraction must be positive");
  }
}

double NoiseSource::unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NoiseSource::draw() {
  const double delta = model_.bound;
  const std::uint64_t call = calls_++;
  double xi = 0.0;
  switch (model_.kind) {
    case NoiseKind::kZero:
      xi = 0.0;
      break;
    case NoiseKind::kUniform:
      xi = delta * (2.0 * unit() - 1.0);
      break;
    case NoiseKind::kClippedGaussian: {
      const double u1 = 1.0 - unit();  // (0, 1]
      const double u2 = unit();
      const double normal =
          std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
      xi = model_.gaussian_sigma_fraction * delta * normal;
      break;
    }
    case NoiseKind::kFixedBiasPlus:
      xi = delta;
      break;
    case NoiseKind::kFixedBiasMinus:
      xi = -delta;
      break;
    case NoiseKind::kAlternatingBias:
      xi = (call % 2 == 0) ? delta : -delta;
      break;
  }
  return std::clamp(xi, -delta, delta);
}

}  // namespace safeopt

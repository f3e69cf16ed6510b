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

#include "safeopt/oracle.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "safeopt/errors.hpp"

namespace safeopt {
namespace {

// exact sign of (a - b) - bound, via an error-free difference
bool exceeds(double a, double b, double bound) {
  const double s = a - b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (-b - bb);
  return s > bound || (s == bound && err > 0.0);
}

// fl(fx + xi) can land half an ulp outside [fx - bound, fx + bound]
double within_band(double fx, double value, double bound) {
  while (exceeds(value, fx, bound)) value = std::nextafter(value, fx);
  while (exceeds(fx, value, bound)) value = std::nextafter(value, fx);
  return value;
}

}  // namespace

bool SafetySentinel::observe(double x, double value) {
  if (value >= threshold_) return true;
  records_.push_back({x, value});
  return false;
}

Oracle::Oracle(Problem problem, NoiseModel model, std::uint64_t seed,
               OracleOptions options)
    : problem_(std::make_shared<const Problem>(std::move(problem))),
      noise_(model, seed),
      seed_(seed),
      options_(options),
      sentinel_(problem_->threshold),
      start_(std::chrono::steady_clock::now()) {
  problem_->validate();
  if (model.bound > problem_->noise_bound) {
    throw InputError("noise model bound exceeds the problem's noise bound");
  }
}

double Oracle::evaluate(double x, TraceRecord tag) {
  if (!problem_->in_domain(x)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "evaluate: x=" << x << " outside [" << problem_->a << ", "
        << problem_->b << "]";
    throw DomainError(msg.str());
  }
  const double fx = problem_->f(x);
  const double value =
      within_band(fx, fx + noise_.draw(), noise_.model().bound);
  const SampleEntry& entry = log_.append(x, value, tag.phase, tag.iteration);

  tag.x = x;
  tag.value = value;
  tag.repetition_index = static_cast<int>(entry.count()) - 1;
  if (options_.timing) {
    tag.timestamp_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                           std::chrono::steady_clock::now() - start_)
                           .count();
  }
  trace_.push_back(std::move(tag));

  if (!sentinel_.observe(x, value) && options_.abort_on_violation) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "safety violation: g(" << x << ") = " << value << " < h = "
        << sentinel_.threshold();
    throw SafetyViolationError(msg.str());
  }
  return value;
}

void Oracle::set_last_event(std::string event) {
  if (trace_.empty()) throw StateError("set_last_event: trace is empty");
  trace_.back().event = std::move(event);
}

Oracle Oracle::fork(std::uint64_t stream, double lo, double hi) const {
  Oracle child(*problem_, noise_.model(), mix_seed(seed_, stream), options_);
  child.log_ = log_.restricted(lo, hi);
  child.start_ = start_;
  return child;
}

void Oracle::absorb(const Oracle& child) {
  for (const TraceRecord& rec : child.trace_) {
    log_.append(rec.x, rec.value, rec.phase, rec.iteration);
    sentinel_.observe(rec.x, rec.value);
    trace_.push_back(rec);
  }
}

}  // namespace safeopt

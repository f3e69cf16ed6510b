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

#ifndef SAFEOPT_ERRORS_HPP_
#define SAFEOPT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace safeopt {

// All library failures derive from Error so callers (the C API in particular)
// can map them to status codes with a single catch chain.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Oracle called outside [a, b].
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller supplied bad arguments (empty region, initial point outside D, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Object used in a state that does not support the request.
class StateError : public Error {
 public:
  using Error::Error;
};

// Internal bookkeeping contradicts a mathematical invariant.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

// A run configuration could not be resolved into a concrete problem.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An observed value fell below the safety threshold.
class SafetyViolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace safeopt

#endif  // SAFEOPT_ERRORS_HPP_

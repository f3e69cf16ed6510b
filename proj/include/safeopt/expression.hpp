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

#ifndef SAFEOPT_EXPRESSION_HPP_
#define SAFEOPT_EXPRESSION_HPP_

#include <string_view>

#include "safeopt/problem.hpp"

namespace safeopt {

// Compiles a formula in the single variable `x` into an Objective.
//
// Grammar: + - * / ^ (right associative), unary minus, parentheses, numeric
// literals, the constants pi and e, the functions sin cos tan exp log sqrt
// abs, and the two-argument min(a, b) / max(a, b).
//
// Throws ConfigError on a syntax error.
Objective parse_expression(std::string_view text);

}  // namespace safeopt

#endif  // SAFEOPT_EXPRESSION_HPP_

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

#include "safeopt/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <utility>

#include "safeopt/errors.hpp"

namespace safeopt {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Objective parse() {
    Objective e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression '" + std::string(text_) + "': " + what + " at offset " +
                      std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  Objective expr() {
    Objective lhs = term();
    for (;;) {
      if (eat('+')) {
        lhs = [l = std::move(lhs), r = term()](double x) { return l(x) + r(x); };
      } else if (eat('-')) {
        lhs = [l = std::move(lhs), r = term()](double x) { return l(x) - r(x); };
      } else {
        return lhs;
      }
    }
  }

  Objective term() {
    Objective lhs = unary();
    for (;;) {
      if (eat('*')) {
        lhs = [l = std::move(lhs), r = unary()](double x) { return l(x) * r(x); };
      } else if (eat('/')) {
        lhs = [l = std::move(lhs), r = unary()](double x) { return l(x) / r(x); };
      } else {
        return lhs;
      }
    }
  }

  Objective unary() {
    if (eat('-')) return [u = unary()](double x) { return -u(x); };
    if (eat('+')) return unary();
    return power();
  }

  Objective power() {
    Objective base = primary();
    if (eat('^')) {
      return [b = std::move(base), p = unary()](double x) { return std::pow(b(x), p(x)); };
    }
    return base;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Objective call(const std::string& name) {
    expect('(');
    Objective a = expr();
    if (name == "min" || name == "max") {
      expect(',');
      Objective b = expr();
      expect(')');
      if (name == "min") {
        return [a = std::move(a), b = std::move(b)](double x) { return std::min(a(x), b(x)); };
      }
      return [a = std::move(a), b = std::move(b)](double x) { return std::max(a(x), b(x)); };
    }
    expect(')');
    double (*fn)(double) = nullptr;
    if (name == "sin") fn = [](double v) { return std::sin(v); };
    else if (name == "cos") fn = [](double v) { return std::cos(v); };
    else if (name == "tan") fn = [](double v) { return std::tan(v); };
    else if (name == "exp") fn = [](double v) { return std::exp(v); };
    else if (name == "log") fn = [](double v) { return std::log(v); };
    else if (name == "sqrt") fn = [](double v) { return std::sqrt(v); };
    else if (name == "abs") fn = [](double v) { return std::abs(v); };
    else fail("unknown function '" + name + "'");
    return [fn, a = std::move(a)](double x) { return fn(a(x)); };
  }

  Objective primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Objective e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(text_.substr(pos_));
      char* end = nullptr;
      const double value = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - rest.c_str());
      return [value](double) { return value; };
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::string name = identifier();
      if (name == "x") return [](double x) { return x; };
      if (name == "pi") return [](double) { return std::numbers::pi; };
      if (name == "e") return [](double) { return std::numbers::e; };
      return call(name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Objective parse_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace safeopt

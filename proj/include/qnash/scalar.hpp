// Copyright 2026 The qnash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include "qnash/errors.hpp"

namespace qnash {

// Exact payoffs. All comparisons are decidable.
using Rational = mpq_class;

enum class ArithmeticMode { kExact, kFloat };

inline constexpr double kDefaultFloatTolerance = 1e-9;

inline std::string_view to_string(ArithmeticMode mode) {
  return mode == ArithmeticMode::kExact ? "exact" : "float";
}

inline ArithmeticMode parse_mode(std::string_view text) {
  if (text == "exact") return ArithmeticMode::kExact;
  if (text == "float") return ArithmeticMode::kFloat;
  throw UsageError("unknown arithmetic mode '" + std::string(text) +
                   "' (expected exact|float)");
}

// Parses "p/q", an integer, or a decimal with optional exponent
// ("-1.25", "3e-2") into an exact rational. Decimal strings are converted
// digit by digit, so "0.1" is exactly 1/10.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string num(text.substr(0, slash));
    std::string den(text.substr(slash + 1));
    auto digits_only = [](const std::string& s, bool allow_sign) {
      if (s.empty()) return false;
      std::size_t start = 0;
      if (allow_sign && (s[0] == '-' || s[0] == '+')) start = 1;
      if (start == s.size()) return false;
      for (std::size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
      return true;
    };
    if (!digits_only(num, true) || !digits_only(den, false)) return fail();
    if (num[0] == '+') num.erase(0, 1);
    Rational r;
    r.get_num() = mpz_class(num, 10);
    r.get_den() = mpz_class(den, 10);
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    r.canonicalize();
    return r;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string mantissa;
  long frac_digits = 0;
  bool seen_dot = false;
  bool seen_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return fail();
  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') return fail();
    ++pos;
    std::string exp_text(text.substr(pos));
    if (exp_text.empty()) return fail();
    std::size_t start = (exp_text[0] == '-' || exp_text[0] == '+') ? 1 : 0;
    if (start == exp_text.size() || exp_text.size() > 8) return fail();
    for (std::size_t i = start; i < exp_text.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(exp_text[i]))) return fail();
    exponent = std::stol(exp_text);
  }
  Rational r{mpz_class(mantissa, 10)};
  long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift < 0) {
    r /= scale;
  } else {
    r *= scale;
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

// Per-type arithmetic policy. Ordering comparisons are raw in both modes;
// equality in float mode is within an absolute tolerance.
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr ArithmeticMode kMode = ArithmeticMode::kExact;

  static bool eq(const Rational& a, const Rational& b) { return a == b; }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static bool is_negative(const Rational& a) { return sgn(a) < 0; }
  // a <= b, tolerance-free.
  static bool le_tol(const Rational& a, const Rational& b) { return a <= b; }
  static bool ge_tol(const Rational& a, const Rational& b) { return a >= b; }

  static Rational from_rational(const Rational& r) { return r; }
  static double to_double(const Rational& a) { return a.get_d(); }

  static std::string format(const Rational& a) {
    if (a.get_den() == 1) return a.get_num().get_str();
    return a.get_str();
  }
};

template <>
struct ScalarOps<double> {
  static constexpr ArithmeticMode kMode = ArithmeticMode::kFloat;
  static inline double tolerance = kDefaultFloatTolerance;

  static bool eq(double a, double b) { return std::fabs(a - b) <= tolerance; }
  static bool is_zero(double a) { return std::fabs(a) <= tolerance; }
  static bool is_negative(double a) { return a < -tolerance; }
  static bool le_tol(double a, double b) { return a <= b + tolerance; }
  static bool ge_tol(double a, double b) { return a >= b - tolerance; }

  static double from_rational(const Rational& r) { return r.get_d(); }
  static double to_double(double a) { return a; }

  // 17 significant digits round-trips every double.
  /// Shortest text that reads back to the same double.
  static std::string format(double a) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), a);
    return std::string(buf, res.ptr);
  }
};

template <class T>
concept Scalar = requires { ScalarOps<T>::kMode; };

}  // namespace qnash

/* Copyright 2026 The emcx Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef EMCX_RATIONAL_HPP
#define EMCX_RATIONAL_HPP

#include <cstdint>
#include <string>

#include "emcx/error.hpp"

namespace emcx {

// Exact rational arithmetic on 128-bit integers. Operands stay tiny in
// practice (sampled numerators/denominators fit in [-20, 20] and model terms
// are shallow), but every operation normalizes and checks for overflow so a
// silent wraparound can never corrupt an oracle verdict.
class Rational {
 public:
  using Int = __int128;

  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  static Rational from_parts(Int n, Int d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    r.normalize();
    return r;
  }

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  Rational operator+(const Rational& o) const {
    return from_parts(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                      checked_mul(den_, o.den_));
  }
  Rational operator-(const Rational& o) const {
    return from_parts(checked_sub(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                      checked_mul(den_, o.den_));
  }
  Rational operator*(const Rational& o) const {
    return from_parts(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) fail(Err::DivisionByZero, "rational division by zero");
    return from_parts(checked_mul(num_, o.den_), checked_mul(den_, o.num_));
  }
  Rational operator-() const { return from_parts(-num_, den_); }

  Rational reciprocal() const {
    if (num_ == 0) fail(Err::DivisionByZero, "reciprocal of zero");
    return from_parts(den_, num_);
  }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
  }

  std::string str() const {
    std::string s = int_to_string(num_);
    if (den_ != 1) s += "/" + int_to_string(den_);
    return s;
  }

  // Accepts "p" or "p/q" with optional leading minus signs.
  static Rational parse(const std::string& text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return from_parts(parse_int(text), 1);
      return from_parts(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    } catch (const Error&) {
      throw;
    } catch (...) {
      fail(Err::ParseError, "bad rational literal '" + text + "'");
    }
  }

 private:
  Int num_;
  Int den_;

  static Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) fail(Err::ArithmeticOverflow, "rational add");
    return r;
  }
  static Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) fail(Err::ArithmeticOverflow, "rational sub");
    return r;
  }
  static Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) fail(Err::ArithmeticOverflow, "rational mul");
    return r;
  }

  static Int gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      Int t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void normalize() {
    if (den_ == 0) fail(Err::DivisionByZero, "rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Int g = gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  static std::string int_to_string(Int v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // -2^127 cannot appear: every value passes through normalize() from
    // small inputs, and overflow checks fire long before the boundary.
    if (neg) v = -v;
    std::string s;
    while (v > 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    return neg ? "-" + s : s;
  }

  static Int parse_int(const std::string& t) {
    if (t.empty()) fail(Err::ParseError, "empty integer");
    size_t i = 0;
    bool neg = false;
    if (t[0] == '-') {
      neg = true;
      i = 1;
    }
    if (i >= t.size()) fail(Err::ParseError, "bad integer '" + t + "'");
    Int v = 0;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') fail(Err::ParseError, "bad integer '" + t + "'");
      v = checked_mul(v, 10);
      v = checked_add(v, t[i] - '0');
    }
    return neg ? -v : v;
  }
};

}  // namespace emcx

#endif  // EMCX_RATIONAL_HPP

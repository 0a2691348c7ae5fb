#pragma once

#include <stdexcept>
#include <string>

#include "hexlimit/lattice.hpp"

// Minimal exact rational on checked 64-bit words; used by the measure
// accounting and the index-series identities where floating point would make
// "exactly 1" meaningless.

namespace hexlimit {

struct Rational {
  i64 num{0};
  i64 den{1};

  Rational() = default;
  Rational(i64 n) : num(n) {}  // NOLINT: implicit integer promotion intended
  Rational(i64 n, i64 d) { *this = make(i128(n), i128(d)); }

  static Rational make(i128 n, i128 d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 a = n < 0 ? -n : n;
    i128 b = d;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    Rational r;
    r.num = detail::checked_i64(n, "rational overflow");
    r.den = detail::checked_i64(d, "rational overflow");
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
  }
  friend Rational operator-(const Rational& a) { return make(-i128(a.num), i128(a.den)); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num) * b.num, i128(a.den) * b.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::invalid_argument("rational division by zero");
    return make(i128(a.num) * b.den, i128(a.den) * b.num);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num) * b.den < i128(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return i128(a.num) * b.den <= i128(b.num) * a.den;
  }

  double approx() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace hexlimit

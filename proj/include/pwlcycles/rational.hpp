// Exact rational numbers over GMP, plus the extended line Q ∪ {±∞}.
#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "pwlcycles/errors.hpp"

namespace pwlcycles {

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long long v) : q_(mpz_class(std::to_string(v))) {}  // NOLINT
  Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw InvalidArgument("zero denominator");
    q_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Accepts "p/q", "p", or a decimal literal with optional exponent
  /// ("0.038", "-1.5e-3"); decimals are converted exactly.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  double to_double() const { return q_.get_d(); }
  long double to_long_double() const;
  std::string to_string() const { return q_.get_str(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InvalidArgument("division by zero rational");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rational(num, den);
}

inline long double Rational::to_long_double() const {
  // Scale so that both parts fit comfortably; mpz -> long double keeps 64 bits.
  const mpz_class& n = q_.get_num();
  const mpz_class& d = q_.get_den();
  const long nbits = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
  const long dbits = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
  long e_n = 0, e_d = 0;
  mpz_class ns = n, ds = d;
  if (nbits > 64) { e_n = nbits - 64; ns = n >> e_n; }
  if (dbits > 64) { e_d = dbits - 64; ds = d >> e_d; }
  auto to_ld = [](const mpz_class& z) {
    const std::string s = z.get_str();
    return std::stold(s);
  };
  long double v = to_ld(ns) / to_ld(ds);
  return std::ldexp(v, static_cast<int>(e_n - e_d));
}

inline Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw ParseError("empty rational literal");

  auto parse_integer = [](const std::string& digits) {
    std::size_t i = 0;
    if (i < digits.size() && (digits[i] == '+' || digits[i] == '-')) ++i;
    if (i == digits.size()) throw ParseError("malformed integer '" + digits + "'");
    for (; i < digits.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(digits[i])))
        throw ParseError("malformed integer '" + digits + "'");
    }
    std::string clean = digits;
    if (clean.front() == '+') clean.erase(clean.begin());
    return mpz_class(clean, 10);
  };

  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const mpz_class num = parse_integer(s.substr(0, slash));
    const std::string den_text = s.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
      throw ParseError("sign not allowed in denominator: '" + s + "'");
    const mpz_class den = parse_integer(den_text);
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    return Rational(num, den);
  }

  // Decimal literal: [sign] digits [. digits] [e|E [sign] digits]
  std::string mantissa = s;
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    const std::string exp_text = s.substr(e + 1);
    const mpz_class ez = parse_integer(exp_text);
    if (!ez.fits_slong_p() || abs(ez) > 100000) throw ParseError("exponent out of range in '" + s + "'");
    exponent = ez.get_si();
  }
  bool negative = false;
  std::size_t i = 0;
  if (i < mantissa.size() && (mantissa[i] == '+' || mantissa[i] == '-')) {
    negative = mantissa[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; i < mantissa.size(); ++i) {
    const char c = mantissa[i];
    if (c == '.') {
      if (seen_point) throw ParseError("malformed decimal '" + s + "'");
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw ParseError("malformed rational literal '" + s + "'");
    }
  }
  if (digits.empty()) throw ParseError("malformed decimal '" + s + "'");
  mpz_class num(digits, 10);
  if (negative) num = -num;
  const long shift = exponent - frac_digits;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0) return Rational(num * ten_pow, mpz_class(1));
  return Rational(num, ten_pow);
}

/// A point of Q ∪ {−∞, +∞}; used for Sturm counting endpoints.
class ExtendedRational {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtendedRational(const Rational& v) : kind_(Kind::Finite), value_(v) {}  // NOLINT
  ExtendedRational(int v) : kind_(Kind::Finite), value_(v) {}  // NOLINT
  static ExtendedRational neg_inf() { return ExtendedRational(Kind::NegInf); }
  static ExtendedRational pos_inf() { return ExtendedRational(Kind::PosInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const Rational& value() const { return value_; }

  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
    return a.is_finite() && a.value_ < b.value_;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "+inf";
      case Kind::Finite: break;
    }
    return value_.to_string();
  }

 private:
  explicit ExtendedRational(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_;
};

}  // namespace pwlcycles

template <>
struct std::hash<pwlcycles::Rational> {
  std::size_t operator()(const pwlcycles::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.to_string());
  }
};

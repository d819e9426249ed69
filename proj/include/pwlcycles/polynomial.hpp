// Dense univariate polynomials over an exact coefficient ring.
//
// Polynomial<R> is used with R = Rational (UniPoly) and recursively with
// R = Polynomial<Rational> when a bivariate polynomial is viewed as a
// polynomial in one variable with coefficients in Q[other].
#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pwlcycles/errors.hpp"
#include "pwlcycles/rational.hpp"

namespace pwlcycles {

template <class R>
class Polynomial;

inline bool ring_is_zero(const Rational& r) { return r.is_zero(); }

/// Exact division in a field.
inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }

template <class R>
class Polynomial {
 public:
  using coefficient_type = R;

  Polynomial() = default;
  Polynomial(int constant) : Polynomial(R(constant)) {}  // NOLINT(google-explicit-constructor)
  Polynomial(const R& constant) {  // NOLINT(google-explicit-constructor)
    if (!ring_is_zero(constant)) coeffs_.push_back(constant);
  }
  /// Coefficients lowest degree first.
  explicit Polynomial(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  Polynomial(std::initializer_list<R> coeffs) : coeffs_(coeffs) { normalize(); }

  static Polynomial monomial(const R& c, std::size_t k) {
    if (ring_is_zero(c)) return {};
    std::vector<R> v(k + 1);
    v[k] = c;
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(R(1), 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  const std::vector<R>& coefficients() const { return coeffs_; }
  R coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : R{}; }
  const R& leading() const {
    if (is_zero()) throw ZeroPolynomial();
    return coeffs_.back();
  }
  /// Number of trailing zero coefficients, i.e. the multiplicity of 0 as a root.
  std::size_t low_order() const {
    if (is_zero()) throw ZeroPolynomial();
    std::size_t k = 0;
    while (ring_is_zero(coeffs_[k])) ++k;
    return k;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<R> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (ring_is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(const R& s, Polynomial p) { return p.scale(s); }
  friend Polynomial operator*(Polynomial p, const R& s) { return p.scale(s); }

  Polynomial& scale(const R& s) {
    for (auto& c : coeffs_) c = s * c;
    normalize();
    return *this;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Horner evaluation; X must accept multiplication by R from the left.
  template <class X>
  X operator()(const X& x) const {
    X acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + X(*it);
    return acc;
  }
  R evaluate(const R& x) const { return (*this)(x); }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<R> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = R(static_cast<int>(i)) * coeffs_[i];
    return Polynomial(std::move(d));
  }

  /// p(−x).
  Polynomial reflect() const {
    auto c = coeffs_;
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return Polynomial(std::move(c));
  }

  /// p(q(x)).
  Polynomial compose(const Polynomial& q) const {
    Polynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + Polynomial(*it);
    return acc;
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      const R& c = coeffs_[static_cast<std::size_t>(k)];
      if (ring_is_zero(c)) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      if (k >= 1) os << "*" << var;
      if (k >= 2) os << "^" << k;
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

 private:
  void normalize() {
    while (!coeffs_.empty() && ring_is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<R> coeffs_;
};

template <class R>
bool ring_is_zero(const Polynomial<R>& p) {
  return p.is_zero();
}

using UniPoly = Polynomial<Rational>;

/// Quotient and remainder over a field.
template <class R>
std::pair<Polynomial<R>, Polynomial<R>> divmod(const Polynomial<R>& a, const Polynomial<R>& b) {
  if (b.is_zero()) throw ZeroPolynomial();
  std::vector<R> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial<R>{}, a};
  std::vector<R> quot(static_cast<std::size_t>(a.degree() - db + 1));
  const R& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const R& top = rem[static_cast<std::size_t>(k)];
    if (ring_is_zero(top)) continue;
    const R q = exact_div(top, lb);
    quot[static_cast<std::size_t>(k - db)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * b.coeff(static_cast<std::size_t>(j));
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial<R>(std::move(quot)), Polynomial<R>(std::move(rem))};
}

/// Exact quotient a / b over an integral domain; the caller guarantees that
/// b divides a. Throws InvalidArgument otherwise.
template <class R>
Polynomial<R> exact_div(const Polynomial<R>& a, const Polynomial<R>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw InvalidArgument("inexact polynomial division");
  return q;
}

/// Pseudo-remainder: lc(b)^(deg a − deg b + 1) · a mod b, computed without
/// division in the coefficient ring.
template <class R>
Polynomial<R> pseudo_remainder(const Polynomial<R>& a, const Polynomial<R>& b) {
  if (b.is_zero()) throw ZeroPolynomial();
  const int db = b.degree();
  if (a.degree() < db) return a;
  std::vector<R> rem = a.coefficients();
  const R& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const R top = rem[static_cast<std::size_t>(k)];
    for (auto& c : rem) c = lb * c;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= top * b.coeff(static_cast<std::size_t>(j));
  }
  rem.resize(static_cast<std::size_t>(db));
  return Polynomial<R>(std::move(rem));
}

template <class R>
R ring_pow(const R& base, int e) {
  R acc(1);
  for (int i = 0; i < e; ++i) acc = acc * base;
  return acc;
}

// ---- Q[x]-specific helpers -------------------------------------------------

/// Positive rational c such that p / c has coprime integer coefficients.
inline Rational content(const UniPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial();
  mpz_class g = 0, l = 1;
  for (const auto& c : p.coefficients()) {
    if (c.is_zero()) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.raw().get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.raw().get_den_mpz_t());
  }
  return Rational(g, l);
}

/// p / content(p); integer coefficients, same sign pattern as p.
inline UniPoly primitive_part(const UniPoly& p) {
  if (p.is_zero()) return p;
  return UniPoly(p) * (Rational(1) / content(p));
}

/// Primitive part with positive leading coefficient.
inline UniPoly normalized(const UniPoly& p) {
  if (p.is_zero()) return p;
  UniPoly q = primitive_part(p);
  return q.leading().sign() < 0 ? -q : q;
}

inline UniPoly monic(const UniPoly& p) {
  if (p.is_zero()) return p;
  return UniPoly(p) * (Rational(1) / p.leading());
}

inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.is_zero() ? UniPoly{} : primitive_part(r);
  }
  return monic(a);
}

/// Removes the factor x^k; returns (p / x^k, k).
inline std::pair<UniPoly, std::size_t> strip_zero_roots(const UniPoly& p) {
  const std::size_t k = p.low_order();
  std::vector<Rational> c(p.coefficients().begin() + static_cast<std::ptrdiff_t>(k), p.coefficients().end());
  return {UniPoly(std::move(c)), k};
}

}  // namespace pwlcycles

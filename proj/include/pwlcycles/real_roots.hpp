// Real root counting and isolation over Q: Sturm chains, Descartes' rule,
// square-free decomposition, and Descartes-bisection isolation.
#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "pwlcycles/errors.hpp"
#include "pwlcycles/polynomial.hpp"
#include "pwlcycles/rational.hpp"

namespace pwlcycles {

/// Root distribution of a polynomial, multiplicities included.
struct RootCount {
  std::size_t negative = 0;
  std::size_t zero = 0;
  std::size_t positive = 0;
  std::size_t nonreal = 0;

  std::size_t nonpositive() const { return negative + zero; }
  std::size_t total() const { return negative + zero + positive + nonreal; }
  friend bool operator==(const RootCount&, const RootCount&) = default;
};

inline UniPoly square_free_part(const UniPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial();
  if (p.degree() <= 0) return normalized(p);
  return normalized(exact_div(p, gcd(p, p.derivative())));
}

inline bool is_square_free(const UniPoly& p) { return gcd(p, p.derivative()).degree() == 0; }

/// Yun's algorithm. Returns (factor, multiplicity) pairs with square-free,
/// pairwise coprime factors; constants are dropped.
inline std::vector<std::pair<UniPoly, std::size_t>> square_free_decomposition(const UniPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial();
  std::vector<std::pair<UniPoly, std::size_t>> out;
  if (p.degree() <= 0) return out;
  const UniPoly f = monic(p);
  const UniPoly df = f.derivative();
  const UniPoly a0 = gcd(f, df);
  UniPoly b = exact_div(f, a0);
  UniPoly c = exact_div(df, a0);
  UniPoly d = c - b.derivative();
  for (std::size_t i = 1; b.degree() > 0; ++i) {
    const UniPoly a = gcd(b, d);
    if (a.degree() > 0) out.emplace_back(normalized(a), i);
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = c - b.derivative();
  }
  return out;
}

/// Canonical Sturm chain of p, each term divided by its positive content.
inline std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial();
  std::vector<UniPoly> chain{primitive_part(p)};
  if (p.degree() <= 0) return chain;
  chain.push_back(primitive_part(p.derivative()));
  while (true) {
    UniPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(primitive_part(-r));
  }
  return chain;
}

namespace detail {

inline int sign_at(const UniPoly& p, const ExtendedRational& x) {
  if (p.is_zero()) return 0;
  switch (x.kind()) {
    case ExtendedRational::Kind::PosInf: return p.leading().sign();
    case ExtendedRational::Kind::NegInf: return (p.degree() % 2 == 0 ? 1 : -1) * p.leading().sign();
    case ExtendedRational::Kind::Finite: break;
  }
  return p.evaluate(x.value()).sign();
}

inline std::size_t sign_variations(const std::vector<int>& signs) {
  std::size_t v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

inline std::size_t chain_variations(const std::vector<UniPoly>& chain, const ExtendedRational& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& q : chain) signs.push_back(sign_at(q, x));
  return sign_variations(signs);
}

}  // namespace detail

/// Number of distinct real roots of p in the half-open interval (lo, hi].
inline std::size_t sturm_count(const UniPoly& p, const ExtendedRational& lo, const ExtendedRational& hi) {
  if (p.is_zero()) throw ZeroPolynomial();
  if (!(lo < hi)) throw InvalidArgument("sturm_count needs lo < hi");
  const auto chain = sturm_chain(square_free_part(p));
  const std::size_t vl = detail::chain_variations(chain, lo);
  const std::size_t vh = detail::chain_variations(chain, hi);
  return vl - vh;
}

/// Sign changes in the coefficient sequence, zeros skipped.
inline std::size_t descartes_positive_bound(const UniPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial();
  std::vector<int> signs;
  for (const auto& c : p.coefficients()) signs.push_back(c.sign());
  return detail::sign_variations(signs);
}

inline RootCount count_roots_with_multiplicity(const UniPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial();
  RootCount rc;
  auto [rest, zeros] = strip_zero_roots(p);
  rc.zero = zeros;
  for (const auto& [factor, mult] : square_free_decomposition(rest)) {
    rc.negative += mult * sturm_count(factor, ExtendedRational::neg_inf(), Rational(0));
    rc.positive += mult * sturm_count(factor, Rational(0), ExtendedRational::pos_inf());
  }
  rc.nonreal = static_cast<std::size_t>(p.degree()) - rc.negative - rc.zero - rc.positive;
  return rc;
}

// ---- isolation -------------------------------------------------------------

/// Open interval (lo, hi) holding exactly one root, or the exact root when lo == hi.
struct IsolatingInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / Rational(2); }
};

namespace detail {

/// Sign changes of (1+x)^n p((lo + hi x)/(1 + x)); bounds the roots of p in (lo, hi).
inline std::size_t descartes_on_interval(const UniPoly& p, const Rational& lo, const Rational& hi) {
  const int n = p.degree();
  const UniPoly num{lo, hi};
  const UniPoly den{Rational(1), Rational(1)};
  std::vector<UniPoly> num_pow{UniPoly(1)}, den_pow{UniPoly(1)};
  for (int i = 0; i < n; ++i) {
    num_pow.push_back(num_pow.back() * num);
    den_pow.push_back(den_pow.back() * den);
  }
  UniPoly q;
  for (int i = 0; i <= n; ++i) {
    const Rational& c = p.coefficients()[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    q += c * (num_pow[static_cast<std::size_t>(i)] * den_pow[static_cast<std::size_t>(n - i)]);
  }
  if (q.is_zero()) return 0;
  return descartes_positive_bound(q);
}

/// Power of two strictly above every root modulus (Cauchy bound).
inline Rational root_bound(const UniPoly& p) {
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) {
    const Rational r = abs(p.coeff(static_cast<std::size_t>(i)) / p.leading());
    if (m < r) m = r;
  }
  Rational b(1);
  while (!(m + Rational(1) < b)) b *= Rational(2);
  return b;
}

}  // namespace detail

inline IsolatingInterval refine(const UniPoly& p, IsolatingInterval iv, const Rational& max_width);

/// Isolating intervals for the real roots of a square-free p, ordered left to
/// right, each no wider than max_width.
inline std::vector<IsolatingInterval> isolate_real_roots(const UniPoly& p, const Rational& max_width = Rational(1)) {
  if (p.is_zero()) throw ZeroPolynomial();
  if (!is_square_free(p)) throw NotSquareFree();
  std::vector<IsolatingInterval> out;
  if (p.degree() <= 0) return out;
  const Rational bound = detail::root_bound(p);

  std::vector<IsolatingInterval> todo{{-bound, bound}};
  while (!todo.empty()) {
    const IsolatingInterval iv = todo.back();
    todo.pop_back();
    const std::size_t v = detail::descartes_on_interval(p, iv.lo, iv.hi);
    if (v == 0) continue;
    if (v == 1) {
      out.push_back(iv);
      continue;
    }
    const Rational mid = iv.midpoint();
    if (p.evaluate(mid).is_zero()) out.push_back({mid, mid});
    todo.push_back({iv.lo, mid});
    todo.push_back({mid, iv.hi});
  }
  for (auto& iv : out) iv = refine(p, iv, max_width);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  return out;
}

/// Bisects until the width is at most max_width or the root is hit exactly.
inline IsolatingInterval refine(const UniPoly& p, IsolatingInterval iv, const Rational& max_width) {
  while (!iv.exact() && max_width < iv.width()) {
    const Rational mid = iv.midpoint();
    if (p.evaluate(mid).is_zero()) return {mid, mid};
    if (detail::descartes_on_interval(p, iv.lo, mid) == 1)
      iv.hi = mid;
    else
      iv.lo = mid;
  }
  return iv;
}

/// A real algebraic number: the unique root of a square-free polynomial in
/// an isolating interval.
class AlgebraicReal {
 public:
  AlgebraicReal(UniPoly p, IsolatingInterval iv) : poly_(std::move(p)), iv_(std::move(iv)) {}

  const UniPoly& polynomial() const { return poly_; }
  const IsolatingInterval& interval() const { return iv_; }

  /// −1, 0, +1 for this < r, this == r, this > r.
  int compare(const Rational& r) {
    if (iv_.exact()) return iv_.lo < r ? -1 : (r < iv_.lo ? 1 : 0);
    if (r <= iv_.lo) return 1;
    if (iv_.hi <= r) return -1;
    if (poly_.evaluate(r).is_zero()) {
      iv_ = {r, r};
      return 0;
    }
    if (detail::descartes_on_interval(poly_, iv_.lo, r) == 1) {
      iv_.hi = r;
      return -1;
    }
    iv_.lo = r;
    return 1;
  }

  long double approx() {
    iv_ = refine(poly_, iv_, Rational(mpz_class(1), mpz_class(1) << 80) * (abs(iv_.lo) + abs(iv_.hi) + Rational(1)));
    return iv_.midpoint().to_long_double();
  }

 private:
  UniPoly poly_;
  IsolatingInterval iv_;
};

}  // namespace pwlcycles

// Resultants via the subresultant pseudo-remainder sequence.
//
// Works over any integral domain R with exact division, so the same code
// eliminates a variable from a bivariate polynomial (R = Q[y]) and computes
// plain resultants over Q.
#pragma once

#include <utility>

#include "pwlcycles/bipoly.hpp"
#include "pwlcycles/errors.hpp"
#include "pwlcycles/polynomial.hpp"

namespace pwlcycles {

namespace detail {

template <class R>
Polynomial<R> divide_coefficients(const Polynomial<R>& p, const R& d) {
  std::vector<R> c = p.coefficients();
  for (auto& v : c) v = exact_div(v, d);
  return Polynomial<R>(std::move(c));
}

}  // namespace detail

/// Res(a, b) with respect to the main variable of the polynomials.
/// Res of two nonzero constants is 1; Res with the zero polynomial is 0.
template <class R>
R resultant(Polynomial<R> a, Polynomial<R> b) {
  if (a.is_zero() || b.is_zero()) return R{};
  int s = 1;
  if (a.degree() < b.degree()) {
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
    std::swap(a, b);
  }
  if (b.degree() == 0) return ring_pow(b.leading(), a.degree());

  R g(1), h(1);
  while (true) {
    const int delta = a.degree() - b.degree();
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
    Polynomial<R> r = pseudo_remainder(a, b);
    a = std::move(b);
    if (r.is_zero()) return R{};
    b = detail::divide_coefficients(r, g * ring_pow(h, delta));
    g = a.leading();
    if (delta == 0) {
      // h stays: h^(1-0) * g^0 = h
    } else if (delta == 1) {
      h = g;
    } else {
      h = exact_div(ring_pow(g, delta), ring_pow(h, delta - 1));
    }
    if (b.degree() == 0) break;
  }
  const int da = a.degree();
  R out = ring_pow(b.leading(), da);
  if (da > 1) out = exact_div(out, ring_pow(h, da - 1));
  return s < 0 ? -out : out;
}

/// Eliminates `v` from f and g: Res_v(f, g) as a polynomial in the other variable.
inline UniPoly eliminate(const BiPoly& f, const BiPoly& g, Var v) {
  return resultant(f.as_univariate_in(v), g.as_univariate_in(v));
}

/// Discriminant-free check helper: Res(p, p') over Q.
inline Rational resultant_with_derivative(const UniPoly& p) { return resultant(p, p.derivative()); }

}  // namespace pwlcycles

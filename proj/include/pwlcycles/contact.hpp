// Contact polynomials: the conic F̃_b and the cubic G̃_b in the coordinates
// (Y₀, Y₁) = (y₀ + y₁, y₀y₁), their preimages F_b, G_b in (y₀, y₁), and the
// classification of the conic.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pwlcycles/bipoly.hpp"
#include "pwlcycles/canonical_form.hpp"
#include "pwlcycles/polynomial.hpp"
#include "pwlcycles/real_roots.hpp"

namespace pwlcycles {

/// m₀…m₅ and n₁…n₉ (n[0] unused) over any commutative ring S holding the
/// parameter b, so the same formulas serve b ∈ Q and b as an indeterminate.
template <class S>
struct ContactCoefficients {
  std::array<S, 6> m;
  std::array<S, 10> n;
};

template <class S>
ContactCoefficients<S> contact_coefficients(const CanonicalForm& cf, const S& b) {
  const S TL(cf.T_L), DL(cf.D_L), aL(cf.a_L), TR(cf.T_R), DR(cf.D_R), aR(cf.a_R);
  const S c2(Rational(2)), c3(Rational(3)), c4(Rational(4)), c7(Rational(7));
  const S aL2 = aL * aL, aR2 = aR * aR, b2 = b * b, b3 = b2 * b, DL2 = DL * DL, TL2 = TL * TL;
  ContactCoefficients<S> c;
  auto& m = c.m;
  m[0] = aL2 * (aR2 * b + b3 * DR + aR * b2 * TR);
  m[1] = -(aL2 * b * (c2 * b * DR + aR * TR));
  m[2] = -(aR2 * (b * DL + aL * TL)) + b * DR * (c3 * aL2 - b2 * DL + aL * b * TL) + aR * (aL2 - b2 * DL) * TR;
  m[3] = aL2 * b * DR;
  m[4] = aR2 * DL - DR * (aL2 - b2 * DL + aL * b * TL) + aR * b * DL * TR;
  m[5] = aL * DR * TL - aR * DL * TR - b * DL * DR;

  auto& n = c.n;
  n[0] = S(Rational(0));
  n[1] = aL2 * aL2 * b * (c2 * b * DR + aR * TR);
  n[2] = -(c2 * aL2 * aL * b * (c2 * aL * DR + c2 * b * DR * TL + aR * TL * TR));
  n[3] = aL2 * (aR2 * (b * DL + aL * TL) + b * DR * (-(c3 * aL2) + b2 * DL - aL * b * TL) +
                aR * (-(aL2 * TR) + b2 * DL * TR));
  n[4] = aL * (c2 * aL2 * aL * DR + aL2 * TL * (c7 * b * DR + aR * TR) - b * DL * TL * (aR2 + b2 * DR + aR * b * TR) -
               aL * (-(b2 * DR * TL2) + aR2 * (c2 * DL + TL2) + aR * b * DL * TR));
  n[5] = aL2 * (-(aR2 * DL) + DR * (aL2 - b2 * DL + aL * b * TL) - aR * b * DL * TR);
  n[6] = c2 * (aR2 * DL * (b * DL + c3 * aL * TL) +
               DR * (b3 * DL2 - c2 * aL2 * aL * TL + aL * b2 * DL * TL - aL2 * b * (c3 * DL + c2 * TL2)) +
               aR * DL * (-aL2 + b2 * DL + c2 * aL * b * TL) * TR);
  n[7] = aL * (aR2 * DL * TL + DR * TL * (-(c3 * aL2) + b2 * DL - aL * b * TL) + aR * DL * (c2 * aL + b * TL) * TR);
  n[8] = -(c3 * aR2 * DL2) + DR * (-(c3 * b2 * DL2) + aL * b * DL * TL + aL2 * (c3 * DL + c2 * TL2)) -
         aR * DL * (c3 * b * DL + c2 * aL * TL) * TR;
  n[9] = c4 * DL * (b * DL * DR - aL * DR * TL + aR * DL * TR);
  return c;
}

/// Monomials (i, j, coefficient) of F̃ = m₀ + m₁Y₀ + (m₂−2m₃)Y₁ + m₃Y₀² + m₄Y₀Y₁ + m₅Y₁².
template <class S>
std::vector<std::tuple<int, int, S>> F_tilde_terms(const std::array<S, 6>& m) {
  const S two(Rational(2));
  return {{0, 0, m[0]}, {1, 0, m[1]}, {0, 1, m[2] - two * m[3]}, {2, 0, m[3]}, {1, 1, m[4]}, {0, 2, m[5]}};
}

/// Monomials of G̃ = n₁Y₀ + (n₂−2n₃)Y₁ + n₃Y₀² + (n₄−3n₅)Y₀Y₁ + (n₆−2n₇)Y₁² + n₅Y₀³ + n₇Y₀²Y₁ + n₈Y₀Y₁² + n₉Y₁³.
template <class S>
std::vector<std::tuple<int, int, S>> G_tilde_terms(const std::array<S, 10>& n) {
  const S two(Rational(2)), three(Rational(3));
  return {{1, 0, n[1]},         {0, 1, n[2] - two * n[3]}, {2, 0, n[3]}, {1, 1, n[4] - three * n[5]},
          {0, 2, n[6] - two * n[7]}, {3, 0, n[5]},           {2, 1, n[7]}, {1, 2, n[8]},
          {0, 3, n[9]}};
}

/// Terms as a polynomial in Y₀ whose coefficients are polynomials in Y₁ over S.
template <class S>
Polynomial<Polynomial<S>> in_Y0(const std::vector<std::tuple<int, int, S>>& terms) {
  std::vector<Polynomial<S>> coeffs(4);
  for (const auto& [i, j, c] : terms) coeffs[static_cast<std::size_t>(i)] += Polynomial<S>::monomial(c, static_cast<std::size_t>(j));
  return Polynomial<Polynomial<S>>(std::move(coeffs));
}

inline BiPoly to_bipoly(const std::vector<std::tuple<int, int, Rational>>& terms) {
  BiPoly p;
  for (const auto& [i, j, c] : terms) p.add_term(i, j, c);
  return p;
}

struct ConicF {
  std::array<Rational, 6> m;
  BiPoly poly;  // F̃_b(Y₀, Y₁)
  Rational delta;
  Rational b;
};

struct CubicG {
  std::array<Rational, 10> n;
  BiPoly poly;  // G̃_b(Y₀, Y₁)
};

/// Δ_b in closed form.
inline Rational discriminant(const CanonicalForm& cf, const Rational& b) {
  const Rational inner = cf.D_R * (cf.a_L * cf.a_L - cf.a_L * b * cf.T_L + b * b * cf.D_L) + cf.a_R * cf.a_R * cf.D_L +
                         cf.a_R * b * cf.D_L * cf.T_R;
  return inner * inner - Rational(4) * cf.a_L * cf.a_L * cf.a_R * cf.a_R * cf.D_L * cf.D_R;
}

inline ConicF build_F(const CanonicalForm& cf, const Rational& b) {
  const auto c = contact_coefficients<Rational>(cf, b);
  return {c.m, to_bipoly(F_tilde_terms(c.m)), discriminant(cf, b), b};
}

inline CubicG build_G(const CanonicalForm& cf, const Rational& b) {
  const auto c = contact_coefficients<Rational>(cf, b);
  return {c.n, to_bipoly(G_tilde_terms(c.n))};
}

/// F_b(y₀, y₁) before the change of coordinates; Y0 stands for y₀, Y1 for y₁.
inline BiPoly original_F(const ConicF& F) {
  const auto& m = F.m;
  BiPoly p;
  p.add_term(0, 0, m[0]);
  p.add_term(1, 0, m[1]);
  p.add_term(0, 1, m[1]);
  p.add_term(1, 1, m[2]);
  p.add_term(2, 0, m[3]);
  p.add_term(0, 2, m[3]);
  p.add_term(1, 2, m[4]);
  p.add_term(2, 1, m[4]);
  p.add_term(2, 2, m[5]);
  return p;
}

inline BiPoly original_G(const CubicG& G) {
  const auto& n = G.n;
  BiPoly p;
  auto sym = [&p](int i, int j, const Rational& c) {
    p.add_term(i, j, c);
    if (i != j) p.add_term(j, i, c);
  };
  sym(1, 0, n[1]);
  sym(1, 1, n[2]);
  sym(2, 0, n[3]);
  sym(2, 1, n[4]);
  sym(3, 0, n[5]);
  sym(2, 2, n[6]);
  sym(3, 1, n[7]);
  sym(3, 2, n[8]);
  sym(3, 3, n[9]);
  return p;
}

/// The point (a_L T_L / D_L, a_L² / D_L) that lies on both curves; absent when D_L = 0.
inline std::optional<std::pair<Rational, Rational>> known_point(const CanonicalForm& cf) {
  if (cf.D_L.is_zero()) return std::nullopt;
  return std::make_pair(cf.a_L * cf.T_L / cf.D_L, cf.a_L * cf.a_L / cf.D_L);
}

// ---- conic classification --------------------------------------------------

enum class ConicDetail {
  Hyperbola,
  CrossingLines,
  Ellipse,
  Point,
  ImaginaryEllipse,
  Parabola,
  ParallelLines,
  DoubleLine,
  ImaginaryParallelLines,
  SingleLine,
  EmptyConstant,
  Plane,  // F̃ ≡ 0
};

/// The coarse classes used in reports.
enum class ConicClass { Hyperbola, Ellipse, Parabola, Lines, Point, Empty, Plane };

inline const char* to_string(ConicClass c) {
  switch (c) {
    case ConicClass::Hyperbola: return "hyperbola";
    case ConicClass::Ellipse: return "ellipse";
    case ConicClass::Parabola: return "parabola";
    case ConicClass::Lines: return "lines";
    case ConicClass::Point: return "point";
    case ConicClass::Empty: return "empty";
    case ConicClass::Plane: return "plane";
  }
  return "?";
}

inline const char* to_string(ConicDetail c) {
  switch (c) {
    case ConicDetail::Hyperbola: return "hyperbola";
    case ConicDetail::CrossingLines: return "crossing lines";
    case ConicDetail::Ellipse: return "ellipse";
    case ConicDetail::Point: return "point";
    case ConicDetail::ImaginaryEllipse: return "imaginary ellipse";
    case ConicDetail::Parabola: return "parabola";
    case ConicDetail::ParallelLines: return "parallel lines";
    case ConicDetail::DoubleLine: return "double line";
    case ConicDetail::ImaginaryParallelLines: return "imaginary parallel lines";
    case ConicDetail::SingleLine: return "single line";
    case ConicDetail::EmptyConstant: return "empty";
    case ConicDetail::Plane: return "whole plane";
  }
  return "?";
}

inline ConicClass coarse(ConicDetail d) {
  switch (d) {
    case ConicDetail::Hyperbola: return ConicClass::Hyperbola;
    case ConicDetail::Ellipse: return ConicClass::Ellipse;
    case ConicDetail::Point: return ConicClass::Point;
    case ConicDetail::Parabola: return ConicClass::Parabola;
    case ConicDetail::CrossingLines:
    case ConicDetail::ParallelLines:
    case ConicDetail::DoubleLine:
    case ConicDetail::SingleLine: return ConicClass::Lines;
    case ConicDetail::ImaginaryEllipse:
    case ConicDetail::ImaginaryParallelLines:
    case ConicDetail::EmptyConstant: return ConicClass::Empty;
    case ConicDetail::Plane: return ConicClass::Plane;
  }
  return ConicClass::Empty;
}

/// Number of connected components of the real locus (Plane counts as 1).
inline int component_count(ConicDetail d) {
  switch (d) {
    case ConicDetail::Hyperbola:
    case ConicDetail::ParallelLines: return 2;
    case ConicDetail::CrossingLines:
    case ConicDetail::Ellipse:
    case ConicDetail::Point:
    case ConicDetail::Parabola:
    case ConicDetail::DoubleLine:
    case ConicDetail::SingleLine:
    case ConicDetail::Plane: return 1;
    case ConicDetail::ImaginaryEllipse:
    case ConicDetail::ImaginaryParallelLines:
    case ConicDetail::EmptyConstant: return 0;
  }
  return 0;
}

/// Symmetric 3×3 matrix of F̃ in homogeneous coordinates (Y₀, Y₁, 1).
inline std::array<std::array<Rational, 3>, 3> conic_matrix(const BiPoly& f) {
  const Rational half = Rational(1) / Rational(2);
  const Rational A = f.coeff(2, 0), B = f.coeff(1, 1), C = f.coeff(0, 2);
  const Rational D = f.coeff(1, 0), E = f.coeff(0, 1), F = f.coeff(0, 0);
  return {{{A, half * B, half * D}, {half * B, C, half * E}, {half * D, half * E, F}}};
}

inline Rational det3(const std::array<std::array<Rational, 3>, 3>& M) {
  return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
         M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
}

struct ConicClassification {
  ConicDetail detail;
  ConicClass coarse;
  Rational delta;         // B² − 4AC
  Rational determinant;   // of the 3×3 matrix
};

inline ConicClassification classify_conic(const BiPoly& f) {
  if (f.total_degree() > 2) throw InvalidArgument("classify_conic expects degree at most 2");
  const auto M = conic_matrix(f);
  const Rational A = f.coeff(2, 0), B = f.coeff(1, 1), C = f.coeff(0, 2);
  const Rational delta = B * B - Rational(4) * A * C;
  const Rational d3 = det3(M);
  auto out = [&](ConicDetail d) { return ConicClassification{d, coarse(d), delta, d3}; };

  if (A.is_zero() && B.is_zero() && C.is_zero()) {
    if (!f.coeff(1, 0).is_zero() || !f.coeff(0, 1).is_zero()) return out(ConicDetail::SingleLine);
    return out(f.coeff(0, 0).is_zero() ? ConicDetail::Plane : ConicDetail::EmptyConstant);
  }
  if (delta.sign() > 0) return out(d3.is_zero() ? ConicDetail::CrossingLines : ConicDetail::Hyperbola);
  if (delta.sign() < 0) {
    if (d3.is_zero()) return out(ConicDetail::Point);
    // Real ellipse iff the determinant and the trace of the quadratic part have opposite signs.
    return out((d3 * (A + C)).sign() < 0 ? ConicDetail::Ellipse : ConicDetail::ImaginaryEllipse);
  }
  if (!d3.is_zero()) return out(ConicDetail::Parabola);
  // Parallel-line family; the sum of the principal 2×2 minors involving the
  // constant term separates the three subcases.
  const Rational K = (M[0][0] * M[2][2] - M[0][2] * M[0][2]) + (M[1][1] * M[2][2] - M[1][2] * M[1][2]);
  if (K.sign() < 0) return out(ConicDetail::ParallelLines);
  if (K.is_zero()) return out(ConicDetail::DoubleLine);
  return out(ConicDetail::ImaginaryParallelLines);
}

inline ConicClassification classify_conic(const ConicF& F) { return classify_conic(F.poly); }

/// Zeros of F̃_b(·, 0) that come from the right subsystem: the roots of
/// W_R(Y₀ − b), i.e. Y₀ = b + a_R (T_R ± √(T_R² − 4D_R)) / (2D_R).
inline std::vector<AlgebraicReal> axis_crossings(const CanonicalForm& cf, const Rational& b) {
  const UniPoly shifted = W_polynomial(cf.side(Side::Right)).compose(UniPoly{-b, Rational(1)});
  std::vector<AlgebraicReal> out;
  if (shifted.degree() < 1) return out;
  const UniPoly sf = square_free_part(shifted);
  for (const auto& iv : isolate_real_roots(sf)) out.emplace_back(sf, iv);
  return out;
}

}  // namespace pwlcycles

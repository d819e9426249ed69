// Two-zone piecewise linear systems, their Liénard parameters, the standing
// hypotheses, and the exact domain data of the two half-maps.
#pragma once

#include <array>
#include <optional>
#include <string>

#include "pwlcycles/errors.hpp"
#include "pwlcycles/polynomial.hpp"
#include "pwlcycles/rational.hpp"
#include "pwlcycles/real_roots.hpp"

namespace pwlcycles {

using Vec2 = std::array<Rational, 2>;
using Mat2 = std::array<Vec2, 2>;  // row-major: m[row][col]

inline Rational trace(const Mat2& m) { return m[0][0] + m[1][1]; }
inline Rational det(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

/// x' = A_L x + b_L for x₁ ≤ 0 and x' = A_R x + b_R for x₁ ≥ 0.
struct PWLSystem {
  Mat2 A_L, A_R;
  Vec2 b_L, b_R;
  friend bool operator==(const PWLSystem&, const PWLSystem&) = default;
};

enum class Side { Left, Right };

inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

struct SideParams {
  Rational T, D, a;
};

struct CanonicalForm {
  Rational T_L, D_L, a_L;
  Rational T_R, D_R, a_R;
  Rational b_star;

  SideParams side(Side s) const { return s == Side::Left ? SideParams{T_L, D_L, a_L} : SideParams{T_R, D_R, a_R}; }
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

/// The Liénard system realizing cf: A = ((T, −1), (D, 0)), b_L = (0, −a_L), b_R = (b*, −a_R).
inline PWLSystem realize(const CanonicalForm& cf) {
  PWLSystem s;
  s.A_L = {{{cf.T_L, Rational(-1)}, {cf.D_L, Rational(0)}}};
  s.A_R = {{{cf.T_R, Rational(-1)}, {cf.D_R, Rational(0)}}};
  s.b_L = {Rational(0), -cf.a_L};
  s.b_R = {cf.b_star, -cf.a_R};
  return s;
}

inline bool transversal(const PWLSystem& sys) { return (sys.A_L[0][1] * sys.A_R[0][1]).sign() > 0; }

inline CanonicalForm to_canonical(const PWLSystem& sys) {
  if (!transversal(sys)) throw TangentSeparationLine();
  const Rational& a12L = sys.A_L[0][1];
  const Rational& a22L = sys.A_L[1][1];
  const Rational& a12R = sys.A_R[0][1];
  const Rational& a22R = sys.A_R[1][1];
  CanonicalForm cf;
  cf.T_L = trace(sys.A_L);
  cf.D_L = det(sys.A_L);
  cf.T_R = trace(sys.A_R);
  cf.D_R = det(sys.A_R);
  cf.a_L = a12L * sys.b_L[1] - a22L * sys.b_L[0];
  cf.a_R = (a12L / a12R) * (a12R * sys.b_R[1] - a22R * sys.b_R[0]);
  cf.b_star = a12L * sys.b_R[0] / a12R - sys.b_L[0];
  return cf;
}

enum class EquilibriumKind { Focus, NonFocus };

inline const char* to_string(EquilibriumKind k) { return k == EquilibriumKind::Focus ? "focus" : "nonfocus"; }

inline EquilibriumKind kind_of(const SideParams& p) {
  return (p.T * p.T - Rational(4) * p.D).sign() < 0 ? EquilibriumKind::Focus : EquilibriumKind::NonFocus;
}

struct HypothesisReport {
  bool transversality_ok = false;
  bool left_ok = false;
  bool right_ok = false;
  EquilibriumKind left_kind = EquilibriumKind::NonFocus;
  EquilibriumKind right_kind = EquilibriumKind::NonFocus;

  bool condition_H() const { return transversality_ok && left_ok && right_ok; }
  bool focus_focus() const { return left_kind == EquilibriumKind::Focus && right_kind == EquilibriumKind::Focus; }
};

namespace detail {

inline bool left_condition(const CanonicalForm& cf) {
  const bool focus_like = (Rational(4) * cf.D_L - cf.T_L * cf.T_L).sign() > 0;
  return (cf.a_L.sign() <= 0 && focus_like) || cf.a_L.sign() > 0;
}

inline bool right_condition(const CanonicalForm& cf) {
  const bool focus_like = (Rational(4) * cf.D_R - cf.T_R * cf.T_R).sign() > 0;
  return (cf.a_R.sign() >= 0 && focus_like) || cf.a_R.sign() < 0;
}

}  // namespace detail

/// Verdicts on transversality, condition (H) and the equilibrium types. The
/// canonical form alone is enough: its realization is always transversal.
inline HypothesisReport check_hypotheses(const CanonicalForm& cf, bool transversality_ok = true) {
  HypothesisReport h;
  h.transversality_ok = transversality_ok;
  h.left_ok = detail::left_condition(cf);
  h.right_ok = detail::right_condition(cf);
  h.left_kind = kind_of(cf.side(Side::Left));
  h.right_kind = kind_of(cf.side(Side::Right));
  return h;
}

inline HypothesisReport check_hypotheses(const CanonicalForm& cf, const PWLSystem& sys) {
  return check_hypotheses(cf, transversal(sys));
}

/// W(y) = D y² − a T y + a².
inline UniPoly W_polynomial(const SideParams& p) { return UniPoly{p.a * p.a, -p.a * p.T, p.D}; }

/// Exact description of the domain of one half-map: the endpoints μ, μ¹ as
/// algebraic numbers (absent means ±∞) and the two boundary flags.
struct ExactHalfMapDomain {
  Side side = Side::Left;
  UniPoly W;
  std::optional<AlgebraicReal> mu;   // smallest positive root of W, or +∞
  std::optional<AlgebraicReal> mu1;  // largest negative root of W, or −∞
  bool lambda_positive = false;      // λ > 0, and then y(λ) = 0
  bool y_at_lambda_negative = false;  // λ = 0 and y(0) < 0
};

namespace detail {

inline ExactHalfMapDomain side_domain(const CanonicalForm& cf, Side s) {
  const SideParams p = cf.side(s);
  ExactHalfMapDomain d;
  d.side = s;
  d.W = W_polynomial(p);
  if (d.W.degree() >= 1) {
    const UniPoly core = strip_zero_roots(square_free_part(d.W)).first;
    for (const auto& iv : isolate_real_roots(core)) {
      AlgebraicReal root(core, iv);
      if (root.compare(Rational(0)) > 0) {
        if (!d.mu) d.mu = root;
      } else {
        d.mu1 = root;
      }
    }
  }
  const bool focus_like = (Rational(4) * p.D - p.T * p.T).sign() > 0;
  if (s == Side::Left) {
    d.lambda_positive = p.a.sign() < 0 && focus_like && p.T.sign() < 0;
    d.y_at_lambda_negative = p.a.sign() < 0 && focus_like && p.T.sign() > 0;
  } else {
    d.lambda_positive = p.a.sign() > 0 && focus_like && p.T.sign() > 0;
    d.y_at_lambda_negative = p.a.sign() > 0 && focus_like && p.T.sign() < 0;
  }
  return d;
}

}  // namespace detail

inline std::pair<ExactHalfMapDomain, ExactHalfMapDomain> halfmap_domains(const CanonicalForm& cf) {
  const HypothesisReport h = check_hypotheses(cf);
  if (!h.condition_H()) throw HypothesisViolation("condition (H) fails");
  return {detail::side_domain(cf, Side::Left), detail::side_domain(cf, Side::Right)};
}

}  // namespace pwlcycles

// Certified upper bounds on the number of crossing limit cycles.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pwlcycles/canonical_form.hpp"
#include "pwlcycles/contact.hpp"
#include "pwlcycles/real_roots.hpp"
#include "pwlcycles/resultant.hpp"

namespace pwlcycles {

enum class Method {
  FocusGeneral_8_minus_ell,
  FocusCase_k_plus_2,
  FocusCase2_one,
  Corollary_seven,
  NoSlidingOne,
  Convexity_two,
  NoCycles_zero,
  Method_N_k_1,
  Inconclusive,
};

inline const char* to_string(Method m) {
  switch (m) {
    case Method::FocusGeneral_8_minus_ell: return "FocusGeneral_8_minus_ell";
    case Method::FocusCase_k_plus_2: return "FocusCase_k_plus_2";
    case Method::FocusCase2_one: return "FocusCase2_one";
    case Method::Corollary_seven: return "Corollary_seven";
    case Method::NoSlidingOne: return "NoSlidingOne";
    case Method::Convexity_two: return "Convexity_two";
    case Method::NoCycles_zero: return "NoCycles_zero";
    case Method::Method_N_k_1: return "Method_N_k_1";
    case Method::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Short human label, e.g. "Theorem k+2".
inline const char* describe(Method m) {
  switch (m) {
    case Method::FocusGeneral_8_minus_ell: return "Theorem 8-l";
    case Method::FocusCase_k_plus_2: return "Theorem k+2";
    case Method::FocusCase2_one: return "condition P";
    case Method::Corollary_seven: return "focus-focus cap";
    case Method::NoSlidingOne: return "no sliding set, b*=0";
    case Method::Convexity_two: return "convex half-maps";
    case Method::NoCycles_zero: return "no cycles";
    case Method::Method_N_k_1: return "N+k+1";
    case Method::Inconclusive: return "inconclusive";
  }
  return "?";
}

enum class CertificateKind {
  Transversality,
  ConditionH,
  BStarZero,
  OffsetDegenerate,
  Discriminant,
  ConditionPDegenerate,
  RootCount,
  DescartesNegative,
  KnownPoint,
  Conic,
  AxisAvoidance,
  DegreeStable,
};

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::Transversality: return "transversality";
    case CertificateKind::ConditionH: return "condition_H";
    case CertificateKind::BStarZero: return "b_star_zero";
    case CertificateKind::OffsetDegenerate: return "offset_degenerate";
    case CertificateKind::Discriminant: return "discriminant";
    case CertificateKind::ConditionPDegenerate: return "condition_P_degenerate";
    case CertificateKind::RootCount: return "root_count";
    case CertificateKind::DescartesNegative: return "descartes_negative";
    case CertificateKind::KnownPoint: return "known_point";
    case CertificateKind::Conic: return "conic";
    case CertificateKind::AxisAvoidance: return "axis_avoidance";
    case CertificateKind::DegreeStable: return "degree_stable";
  }
  return "?";
}

inline std::optional<CertificateKind> certificate_kind_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(CertificateKind::DegreeStable); ++i) {
    const auto k = static_cast<CertificateKind>(i);
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

/// A claim plus the exact numbers it rests on.
struct Certificate {
  CertificateKind kind;
  std::string claim;
  std::vector<Rational> witness;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct FiredCriterion {
  Method method;
  int bound;
};

struct BoundReport {
  Method theorem_used = Method::Inconclusive;
  std::optional<int> upper_bound;
  std::optional<int> ell, k, N;
  std::optional<ConicClass> conic_class;
  std::optional<ConicDetail> conic_detail;
  std::optional<Rational> delta;
  std::optional<UniPoly> R;
  std::string root_count_method;  // "descartes" or "sturm" when k is reported
  std::vector<FiredCriterion> fired;
  std::vector<Certificate> certificates;
  std::vector<std::string> notes;

  bool conclusive() const { return theorem_used != Method::Inconclusive; }
};

// ---- resultant and root counts ----------------------------------------------

/// Res_{Y₀}(F̃, G̃) with content removed and positive leading coefficient.
inline UniPoly resultant_R(const ConicF& F, const CubicG& G) {
  if (F.poly.degree_in(Var::Y0) < 1) throw DegenerateElimination("F has degree 0 in Y0");
  if (G.poly.degree_in(Var::Y0) < 1) throw DegenerateElimination("G has degree 0 in Y0");
  return normalized(eliminate(F.poly, G.poly, Var::Y0));
}

inline UniPoly resultant_R(const CanonicalForm& cf) { return resultant_R(build_F(cf, cf.b_star), build_G(cf, cf.b_star)); }

/// The resultant with b left symbolic: a polynomial in Y₁ over Q[b].
inline Polynomial<UniPoly> generic_resultant(const CanonicalForm& cf) {
  const auto c = contact_coefficients<UniPoly>(cf, UniPoly::x());
  return resultant(in_Y0(F_tilde_terms(c.m)), in_Y0(G_tilde_terms(c.n)));
}

/// Evaluates each Q[b] coefficient at b.
inline UniPoly specialize_b(const Polynomial<UniPoly>& generic, const Rational& b) {
  std::vector<Rational> c;
  for (const auto& q : generic.coefficients()) c.push_back(q.evaluate(b));
  return UniPoly(std::move(c));
}

/// Sign changes of R(−Y₁): bound on the strictly negative roots.
inline std::size_t descartes_negative_bound(const UniPoly& R) { return descartes_positive_bound(R.reflect()); }

// ---- noncompact components in the lower half-plane ---------------------------

struct NoncompactCount {
  int N = 0;
  bool meets_axis = false;
  std::string reason;
};

/// Upper bound on the noncompact connected components of the conic inside
/// H = {Y₁ < 0}, the image of the open fourth quadrant.
inline NoncompactCount count_noncompact_in_H(const ConicF& F, const CanonicalForm& cf) {
  if (cf.D_R.is_zero()) throw InconclusiveError("axis test needs D_R != 0");
  const ConicClassification cls = classify_conic(F);
  if (cls.detail == ConicDetail::Plane) throw InconclusiveError("F vanishes identically");
  const UniPoly on_axis = F.poly.specialize(Var::Y1, Rational(0));
  const auto kp = known_point(cf);
  const bool point_above = kp && kp->second.sign() > 0;

  NoncompactCount out;
  if (on_axis.is_zero()) {
    out.meets_axis = true;
    out.N = 2;
    out.reason = "axis contained in the conic; sound bound";
    return out;
  }
  const std::size_t crossings = on_axis.degree() < 1
                                    ? 0
                                    : sturm_count(on_axis, ExtendedRational::neg_inf(), ExtendedRational::pos_inf());
  if (crossings > 0) {
    out.meets_axis = true;
    out.N = component_count(cls.detail) + static_cast<int>(crossings);
    out.reason = "conic meets the axis; sound bound components + crossings";
    return out;
  }
  switch (cls.detail) {
    case ConicDetail::Ellipse:
    case ConicDetail::Point:
    case ConicDetail::ImaginaryEllipse:
    case ConicDetail::ImaginaryParallelLines:
    case ConicDetail::EmptyConstant:
      out.N = 0;
      out.reason = "no noncompact component";
      break;
    case ConicDetail::Parabola:
      out.N = point_above ? 0 : 1;
      out.reason = point_above ? "parabola lies above the axis" : "single parabola";
      break;
    case ConicDetail::Hyperbola:
      out.N = point_above ? 1 : 2;
      out.reason = point_above ? "one branch holds the known point above the axis" : "two branches";
      break;
    default:
      out.N = component_count(cls.detail);
      out.reason = "line components";
      break;
  }
  return out;
}

// ---- certificates -------------------------------------------------------------

namespace detail {

inline std::string sign_word(const Rational& r) { return r.sign() > 0 ? "> 0" : (r.sign() < 0 ? "< 0" : "= 0"); }

inline Rational condition_p_target(const CanonicalForm& cf) {
  return (cf.a_L * cf.D_R * cf.T_L - cf.a_R * cf.D_L * cf.T_R) / (Rational(2) * cf.D_L * cf.D_R);
}

}  // namespace detail

/// Builds the certificate of the given kind from the canonical data alone.
/// Transversality needs the raw product a₁₂^L a₁₂^R and is made by
/// transversality_certificate instead.
inline Certificate certify(CertificateKind kind, const CanonicalForm& cf) {
  Certificate c{kind, "", {}};
  const Rational& b = cf.b_star;
  switch (kind) {
    case CertificateKind::Transversality:
      throw InvalidArgument("transversality certificate needs the raw system");
    case CertificateKind::ConditionH: {
      const Rational gl = Rational(4) * cf.D_L - cf.T_L * cf.T_L, gr = Rational(4) * cf.D_R - cf.T_R * cf.T_R;
      c.witness = {cf.a_L, gl, cf.a_R, gr};
      const auto h = check_hypotheses(cf);
      c.claim = std::string("left ") + (h.left_ok ? "holds" : "fails") + ", right " + (h.right_ok ? "holds" : "fails");
      break;
    }
    case CertificateKind::BStarZero:
      c.witness = {b};
      c.claim = "b* " + detail::sign_word(b);
      break;
    case CertificateKind::OffsetDegenerate:
      c.witness = {cf.a_L, cf.a_R, cf.a_L * cf.a_R};
      c.claim = "a_L a_R " + detail::sign_word(cf.a_L * cf.a_R);
      break;
    case CertificateKind::Discriminant: {
      const Rational d = discriminant(cf, b);
      c.witness = {b, d};
      c.claim = "Delta_b* " + detail::sign_word(d);
      break;
    }
    case CertificateKind::ConditionPDegenerate: {
      if (cf.D_L.is_zero() || cf.D_R.is_zero()) throw InvalidArgument("needs D_L D_R != 0");
      const Rational target = detail::condition_p_target(cf);
      c.witness = {b, target, discriminant(cf, b), cf.a_L * cf.a_R};
      const bool holds = discriminant(cf, b).is_zero() && b == target && (cf.a_L * cf.a_R).sign() < 0;
      c.claim = holds ? "Delta = 0 at the critical b with a_L a_R < 0, so Delta''(b*) < 0"
                      : "degenerate condition P does not hold";
      break;
    }
    case CertificateKind::RootCount: {
      const UniPoly R = resultant_R(cf);
      if (R.is_zero()) {
        c.witness = {Rational(-1)};
        c.claim = "R vanishes identically";
        break;
      }
      const RootCount rc = count_roots_with_multiplicity(R);
      c.witness = {Rational(R.degree()), Rational(static_cast<long>(rc.negative)), Rational(static_cast<long>(rc.zero)),
                   Rational(static_cast<long>(rc.positive)), Rational(static_cast<long>(rc.nonreal))};
      for (const auto& x : R.coefficients()) c.witness.push_back(x);
      c.claim = "deg R = " + std::to_string(R.degree()) + ", nonpositive roots with multiplicity = " +
                std::to_string(rc.nonpositive());
      break;
    }
    case CertificateKind::DescartesNegative: {
      const UniPoly R = resultant_R(cf);
      if (R.is_zero()) throw InvalidArgument("R vanishes identically");
      const std::size_t v = descartes_negative_bound(R);
      c.witness = {Rational(static_cast<long>(v)), R.coeff(0)};
      c.claim = "R(-Y1) has " + std::to_string(v) + " sign changes";
      break;
    }
    case CertificateKind::KnownPoint: {
      const auto kp = known_point(cf);
      if (!kp) throw InvalidArgument("known point needs D_L != 0");
      const Rational fv = build_F(cf, b).poly(kp->first, kp->second);
      const Rational gv = build_G(cf, b).poly(kp->first, kp->second);
      c.witness = {kp->first, kp->second, fv, gv};
      c.claim = "F and G vanish at (a_L T_L/D_L, a_L^2/D_L), Y1 " + detail::sign_word(kp->second);
      break;
    }
    case CertificateKind::Conic: {
      const auto cls = classify_conic(build_F(cf, b));
      c.witness = {cls.delta, cls.determinant};
      c.claim = std::string("conic is a ") + to_string(cls.detail);
      break;
    }
    case CertificateKind::AxisAvoidance: {
      const ConicF F = build_F(cf, b);
      const NoncompactCount nc = count_noncompact_in_H(F, cf);
      c.witness = {Rational(nc.N), Rational(nc.meets_axis ? 1 : 0)};
      c.claim = "N = " + std::to_string(nc.N) + " (" + nc.reason + ")";
      break;
    }
    case CertificateKind::DegreeStable: {
      const Polynomial<UniPoly> generic = generic_resultant(cf);
      if (generic.is_zero()) {
        c.witness = {Rational(-1)};
        c.claim = "generic resultant vanishes";
        break;
      }
      const Rational lc_at_b = generic.leading().evaluate(b);
      c.witness = {Rational(generic.degree()), lc_at_b};
      c.claim = "generic deg_Y1 R = " + std::to_string(generic.degree()) + ", leading coefficient at b* " +
                detail::sign_word(lc_at_b);
      break;
    }
  }
  return c;
}

inline Certificate transversality_certificate(const PWLSystem& sys) {
  const Rational p = sys.A_L[0][1] * sys.A_R[0][1];
  return {CertificateKind::Transversality, "a12_L a12_R " + detail::sign_word(p), {p}};
}

/// Recomputes the certificate from scratch and compares exactly. Also checks
/// the internal consistency that each claim relies on.
inline bool verify_certificate(const Certificate& c, const CanonicalForm& cf, const PWLSystem* sys = nullptr) {
  if (c.kind == CertificateKind::Transversality) {
    if (c.witness.size() != 1) return false;
    if (sys) return transversality_certificate(*sys) == c;
    return c.claim == "a12_L a12_R " + detail::sign_word(c.witness[0]);
  }
  try {
    if (!(certify(c.kind, cf) == c)) return false;
  } catch (const Error&) {
    return false;
  }
  switch (c.kind) {
    case CertificateKind::KnownPoint: return c.witness[2].is_zero() && c.witness[3].is_zero();
    case CertificateKind::RootCount: {
      if (c.witness.size() < 5) return c.witness.size() == 1;
      const std::vector<Rational> coeffs(c.witness.begin() + 5, c.witness.end());
      const UniPoly R(coeffs);
      const auto total = c.witness[1] + c.witness[2] + c.witness[3] + c.witness[4];
      return Rational(R.degree()) == c.witness[0] && total == c.witness[0];
    }
    default: return true;
  }
}

// ---- criteria -----------------------------------------------------------------

namespace detail {

inline int preference(Method m) {
  switch (m) {
    case Method::FocusCase2_one: return 0;
    case Method::FocusCase_k_plus_2: return 1;
    case Method::FocusGeneral_8_minus_ell: return 2;
    case Method::Corollary_seven: return 3;
    default: return 4;
  }
}

inline void choose_minimum(BoundReport& r) {
  const auto best = std::min_element(r.fired.begin(), r.fired.end(), [](const auto& a, const auto& b) {
    return a.bound != b.bound ? a.bound < b.bound : preference(a.method) < preference(b.method);
  });
  r.theorem_used = best->method;
  r.upper_bound = best->bound;
}

inline bool condition_P(const CanonicalForm& cf, const Rational& delta) {
  if (delta.sign() < 0) return true;
  if (!delta.is_zero()) return false;
  return cf.b_star == condition_p_target(cf) && (cf.a_L * cf.a_R).sign() < 0;
}

}  // namespace detail

/// Focus-focus criteria evaluated at b*. Every applicable criterion is listed
/// in `fired`; the smallest bound wins.
inline BoundReport apply_focus_criteria(const CanonicalForm& cf, const UniPoly& R, const ConicF& F,
                                        std::optional<int> N) {
  const HypothesisReport h = check_hypotheses(cf);
  if (!h.focus_focus()) throw HypothesisViolation("focus criteria need foci on both sides");
  if (cf.b_star.is_zero()) throw HypothesisViolation("focus criteria need b* != 0");
  if ((cf.a_L * cf.a_R).is_zero()) throw HypothesisViolation("focus criteria need a_L a_R != 0");

  BoundReport r;
  r.N = N;
  r.delta = F.delta;
  r.R = R;
  const auto cls = classify_conic(F);
  r.conic_class = cls.coarse;
  r.conic_detail = cls.detail;
  r.certificates.push_back(certify(CertificateKind::Discriminant, cf));
  r.certificates.push_back(certify(CertificateKind::Conic, cf));

  if (detail::condition_P(cf, F.delta)) {
    r.fired.push_back({Method::FocusCase2_one, 1});
    if (F.delta.is_zero()) r.certificates.push_back(certify(CertificateKind::ConditionPDegenerate, cf));
  }
  r.fired.push_back({Method::Corollary_seven, 7});

  if (R.is_zero()) {
    r.notes.push_back("R vanishes identically; root-count criteria do not apply");
  } else {
    const RootCount rc = count_roots_with_multiplicity(R);
    const int nonpos = static_cast<int>(rc.nonpositive());
    const int ell = R.degree() - nonpos;
    r.ell = ell;
    r.fired.push_back({Method::FocusGeneral_8_minus_ell, 8 - ell});
    if (R.degree() == 6) {
      r.k = nonpos;
      r.fired.push_back({Method::FocusCase_k_plus_2, nonpos + 2});
    }
    const std::size_t desc = descartes_negative_bound(R);
    const bool descartes_decides = desc <= 1 && !R.coeff(0).is_zero();
    r.root_count_method = descartes_decides ? "descartes" : "sturm";
    r.certificates.push_back(certify(CertificateKind::RootCount, cf));
    r.certificates.push_back(certify(CertificateKind::DescartesNegative, cf));
  }
  if (known_point(cf)) r.certificates.push_back(certify(CertificateKind::KnownPoint, cf));
  detail::choose_minimum(r);
  return r;
}

namespace detail {

inline BoundReport single(Method m, int bound) {
  BoundReport r;
  r.theorem_used = m;
  r.upper_bound = bound;
  r.fired.push_back({m, bound});
  return r;
}

inline bool rootless(const ExactHalfMapDomain& d) { return !d.mu && !d.mu1; }

/// Non-focus configurations whose premises can be checked mechanically.
inline BoundReport nonfocus_bound(const CanonicalForm& cf) {
  BoundReport r;
  const auto [left, right] = halfmap_domains(cf);
  if (!rootless(left) || !rootless(right)) {
    r.notes.push_back("W has a nonzero real root; a separating-solution argument is needed");
    return r;
  }
  if (left.y_at_lambda_negative || right.y_at_lambda_negative) {
    r.notes.push_back("boundary flag pattern not covered");
    return r;
  }
  const ConicF F = build_F(cf, cf.b_star);
  if (F.m[3].is_zero()) {
    r.notes.push_back("m3 = 0: F degenerates in Y0");
    return r;
  }
  const Polynomial<UniPoly> generic = generic_resultant(cf);
  if (generic.is_zero() || generic.leading().evaluate(cf.b_star).is_zero()) {
    r.notes.push_back("resultant degree drops at b*; roots may escape to infinity");
    return r;
  }
  const UniPoly R = normalized(specialize_b(generic, cf.b_star));
  NoncompactCount nc;
  try {
    nc = count_noncompact_in_H(F, cf);
  } catch (const InconclusiveError& e) {
    r.notes.push_back(e.what());
    return r;
  }
  const RootCount rc = count_roots_with_multiplicity(R);
  const auto cls = classify_conic(F);
  r.R = R;
  r.delta = F.delta;
  r.conic_class = cls.coarse;
  r.conic_detail = cls.detail;
  r.N = nc.N;
  r.k = static_cast<int>(rc.nonpositive());
  r.root_count_method = "sturm";
  r.theorem_used = Method::Method_N_k_1;
  r.upper_bound = nc.N + *r.k + 1;
  r.fired.push_back({Method::Method_N_k_1, *r.upper_bound});
  r.certificates.push_back(certify(CertificateKind::DegreeStable, cf));
  r.certificates.push_back(certify(CertificateKind::Conic, cf));
  r.certificates.push_back(certify(CertificateKind::AxisAvoidance, cf));
  r.certificates.push_back(certify(CertificateKind::RootCount, cf));
  r.notes.push_back("certified under simple-root persistence");
  return r;
}

}  // namespace detail

/// The full pipeline for a system given in canonical form.
inline BoundReport dispatch_bound(const CanonicalForm& cf) {
  const HypothesisReport h = check_hypotheses(cf);
  if (!h.condition_H()) {
    auto r = detail::single(Method::NoCycles_zero, 0);
    r.certificates.push_back(certify(CertificateKind::ConditionH, cf));
    return r;
  }
  if (cf.b_star.is_zero()) {
    auto r = detail::single(Method::NoSlidingOne, 1);
    r.certificates.push_back(certify(CertificateKind::BStarZero, cf));
    return r;
  }
  if (h.focus_focus()) {
    if ((cf.a_L * cf.a_R).is_zero()) {
      auto r = detail::single(Method::Convexity_two, 2);
      r.certificates.push_back(certify(CertificateKind::OffsetDegenerate, cf));
      return r;
    }
    const ConicF F = build_F(cf, cf.b_star);
    const CubicG G = build_G(cf, cf.b_star);
    UniPoly R;
    try {
      R = resultant_R(F, G);
    } catch (const DegenerateElimination&) {
      // R stays zero; the cap still applies.
    }
    std::optional<int> N;
    std::string n_note;
    try {
      N = count_noncompact_in_H(F, cf).N;
    } catch (const InconclusiveError& e) {
      n_note = e.what();
    }
    BoundReport r = apply_focus_criteria(cf, R, F, N);
    if (N) r.certificates.push_back(certify(CertificateKind::AxisAvoidance, cf));
    if (!n_note.empty()) r.notes.push_back("N unavailable: " + n_note);
    r.certificates.insert(r.certificates.begin(), certify(CertificateKind::ConditionH, cf));
    return r;
  }
  BoundReport r = detail::nonfocus_bound(cf);
  r.certificates.insert(r.certificates.begin(), certify(CertificateKind::ConditionH, cf));
  return r;
}

/// The full pipeline for a raw system.
inline BoundReport dispatch_bound(const PWLSystem& sys) {
  if (!transversal(sys)) {
    auto r = detail::single(Method::NoCycles_zero, 0);
    r.certificates.push_back(transversality_certificate(sys));
    return r;
  }
  BoundReport r = dispatch_bound(to_canonical(sys));
  r.certificates.insert(r.certificates.begin(), transversality_certificate(sys));
  return r;
}

}  // namespace pwlcycles

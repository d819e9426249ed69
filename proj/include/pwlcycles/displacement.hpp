// The displacement function δ_b(y0) = y_R(y0 − b) + b − y_L(y0), its sampled
// scan, and the crossing limit cycles found as its zeros.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "pwlcycles/contact.hpp"
#include "pwlcycles/halfmap.hpp"

namespace pwlcycles {

struct DisplacementSample {
  real y0 = 0;
  real delta = 0;
  real delta_prime = 0;
  bool inside_domain = false;
  std::string error;  // set when a half-map evaluation failed at this point
};

enum class Multiplicity { Simple, SuspectedNonsimple };
enum class Stability { Attracting, Repelling, Undetermined };

inline const char* to_string(Multiplicity m) { return m == Multiplicity::Simple ? "simple" : "suspected-nonsimple"; }
inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::Attracting: return "attracting";
    case Stability::Repelling: return "repelling";
    default: return "undetermined";
  }
}

struct CycleZero {
  real y0_root = 0;
  Multiplicity multiplicity = Multiplicity::Simple;
  Stability stability = Stability::Undetermined;
  real y1 = 0;  // y_L(y0_root)
  real delta_prime = 0;
  real residual = 0;
};

/// Stability convention: δ′ < 0 at the root means attracting.
struct CycleSet {
  std::vector<CycleZero> zeros;
  std::size_t count = 0;
  bool continuum = false;  // δ vanishes on the whole grid within tolerance
};

struct DeltaValue {
  real delta = 0;
  real delta_prime = 0;
  real y1 = 0;
};

/// δ_b with both half-maps and their domains resolved once.
class Displacement {
 public:
  Displacement(const CanonicalForm& cf, const Rational& b, real tol = 1e-12L)
      : left_(cf, Side::Left, {tol, true}), right_(cf, Side::Right, {tol, true}), b_(b.to_long_double()), tol_(tol) {}

  real b() const { return b_; }
  real tol() const { return tol_; }
  const HalfMap& left() const { return left_; }
  const HalfMap& right() const { return right_; }

  /// Int I_b = (lower, upper) with I_b = I_L ∩ (I_R + b).
  real lower() const { return std::max({left_.domain().lambda, right_.domain().lambda + b_, real(0)}); }
  real upper() const { return std::min(left_.domain().mu, right_.domain().mu + b_); }

  DeltaValue evaluate(real y0) const {
    const HalfMapValue l = left_.evaluate(y0);
    const HalfMapValue r = right_.evaluate(y0 - b_);
    return {r.y + b_ - l.y, r.dy - l.dy, l.y};
  }

 private:
  HalfMap left_, right_;
  real b_;
  real tol_;
};

/// Offset scale S = max(|a_L|/√D_L, |a_R|/√D_R, |b|), with |a| alone on a side without D > 0.
inline real offset_scale(const CanonicalForm& cf, const Rational& b) {
  auto side_scale = [](const SideParams& p) {
    const real a = std::fabs(p.a.to_long_double()), D = p.D.to_long_double();
    return D > 0 ? a / std::sqrt(D) : a;
  };
  return std::max({side_scale(cf.side(Side::Left)), side_scale(cf.side(Side::Right)),
                   std::fabs(b.to_long_double()), real(1)});
}

/// Asymptotic slope of δ_b for large y0 in the focus-focus case.
inline real asymptotic_slope(const CanonicalForm& cf) {
  auto decay = [](const SideParams& p) {
    const real T = p.T.to_long_double(), D = p.D.to_long_double();
    return (T / 2) * static_cast<real>(M_PI) / std::sqrt(D - T * T / 4);
  };
  return std::exp(decay(cf.side(Side::Left))) - std::exp(-decay(cf.side(Side::Right)));
}

/// 10·S, stretched by |c∞|^(−1/3) when the two foci nearly balance at infinity.
inline real default_y0_max(const CanonicalForm& cf, const Rational& b) {
  real factor = 1;
  if (check_hypotheses(cf).focus_focus()) {
    const real c = std::fabs(asymptotic_slope(cf));
    if (c > 0) factor = std::max<real>(1, std::cbrt(1 / c));
    else factor = 1e3L;
  }
  return 10 * offset_scale(cf, b) * factor;
}

/// u log-spaced over [1e-6, 1], y0 = lower + u (upper − lower).
inline std::vector<DisplacementSample> displacement_scan(const Displacement& d, real y0_max, std::size_t samples) {
  if (samples < 2) throw InvalidArgument("displacement_scan needs at least two samples");
  const real lo = d.lower();
  const real domain_hi = d.upper();
  const real hi = std::min(domain_hi, y0_max);
  std::vector<DisplacementSample> out;
  if (!(hi > lo)) return out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const real u = std::pow(real(10), -6 + 6 * static_cast<real>(i) / static_cast<real>(samples - 1));
    DisplacementSample s;
    s.y0 = lo + u * (hi - lo);
    if (!(s.y0 > lo && s.y0 < domain_hi)) {
      s.error = "outside the open domain";
    } else {
      try {
        const DeltaValue v = d.evaluate(s.y0);
        s.delta = v.delta;
        s.delta_prime = v.delta_prime;
        s.inside_domain = true;
      } catch (const Error& e) {
        s.error = e.what();
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<DisplacementSample> displacement_scan(const CanonicalForm& cf, const Rational& b, real y0_max,
                                                         std::size_t samples = 400, real tol = 1e-12L) {
  return displacement_scan(Displacement(cf, b, tol), y0_max, samples);
}

namespace detail {

inline CycleZero make_zero(const Displacement& d, real y0) {
  CycleZero z;
  z.y0_root = y0;
  const DeltaValue v = d.evaluate(y0);
  z.residual = std::fabs(v.delta);
  z.delta_prime = v.delta_prime;
  z.y1 = v.y1;
  return z;
}

}  // namespace detail

/// Refines every sign change of the scan with TOMS 748 (bracketing
/// secant/inverse-cubic steps with a bisection safeguard).
inline CycleSet find_cycles(const Displacement& d, const std::vector<DisplacementSample>& scan) {
  CycleSet out;
  std::vector<const DisplacementSample*> in;
  for (const auto& s : scan)
    if (s.inside_domain) in.push_back(&s);
  if (in.empty()) return out;

  const real tol = d.tol();
  bool flat = true;
  for (const auto* s : in)
    if (std::fabs(s->delta) > 1e3L * tol * std::max<real>(1, std::fabs(s->y0))) flat = false;
  if (flat) {
    out.continuum = true;
    return out;
  }

  std::vector<CycleZero> found;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto& s = *in[i];
    if (s.delta == 0) {
      found.push_back(detail::make_zero(d, s.y0));
      continue;
    }
    if (i + 1 == in.size()) break;
    const auto& t = *in[i + 1];
    if (t.delta == 0 || (s.delta > 0) == (t.delta > 0)) continue;
    auto f = [&d](real y) { return d.evaluate(y).delta; };
    auto close = [](real a, real b) { return std::fabs(b - a) <= 1e-15L * std::max<real>(1, std::fabs(a)); };
    boost::uintmax_t iters = 100;
    real a = s.y0, b = t.y0, fa = s.delta, fb = t.delta;
    real root;
    try {
      auto br = boost::math::tools::toms748_solve(f, a, b, fa, fb, close, iters);
      const real fa2 = f(br.first), fb2 = f(br.second);
      root = std::fabs(fa2) <= std::fabs(fb2) ? br.first : br.second;
    } catch (const Error&) {
      root = (a + b) / 2;
    }
    found.push_back(detail::make_zero(d, root));
  }

  // Merge near-coincident roots.
  for (std::size_t i = 0; i < found.size(); ++i) {
    CycleZero z = found[i];
    const real scale = std::max<real>(1, std::fabs(z.y0_root));
    bool merged = false;
    while (i + 1 < found.size() && found[i + 1].y0_root - z.y0_root < 1e-6L * scale) {
      ++i;
      merged = true;
    }
    if (merged || std::fabs(z.delta_prime) < 100 * tol) z.multiplicity = Multiplicity::SuspectedNonsimple;
    if (z.multiplicity == Multiplicity::Simple)
      z.stability = z.delta_prime < 0 ? Stability::Attracting : Stability::Repelling;
    out.zeros.push_back(z);
  }
  out.count = out.zeros.size();
  return out;
}

inline CycleSet find_cycles(const CanonicalForm& cf, const Rational& b, const std::vector<DisplacementSample>& scan,
                            real tol = 1e-12L) {
  return find_cycles(Displacement(cf, b, tol), scan);
}

/// Per-root outcome of comparing sign F_b(y0*, y1*) with sign δ′(y0*).
struct SignCheck {
  real y0 = 0;
  int sign_F = 0;
  int sign_delta_prime = 0;
  bool ok = true;
};

inline std::vector<SignCheck> sign_consistency_details(const CycleSet& cycles, const ConicF& F) {
  const BiPoly f = original_F(F);
  std::vector<SignCheck> out;
  for (const auto& z : cycles.zeros) {
    if (z.multiplicity != Multiplicity::Simple) continue;
    SignCheck c;
    c.y0 = z.y0_root;
    const real v = f.evaluate(z.y0_root, z.y1);
    c.sign_F = (v > 0) - (v < 0);
    c.sign_delta_prime = (z.delta_prime > 0) - (z.delta_prime < 0);
    c.ok = c.sign_F == c.sign_delta_prime;
    out.push_back(c);
  }
  return out;
}

inline bool sign_consistency_check(const CanonicalForm& cf, const Rational& b, const CycleSet& cycles,
                                   const ConicF& F) {
  (void)cf;
  if (F.b != b) throw InvalidArgument("conic built for a different b");
  for (const auto& c : sign_consistency_details(cycles, F))
    if (!c.ok) return false;
  return true;
}

}  // namespace pwlcycles

// Poincaré half-maps of the canonical system, evaluated numerically.
//
// The left map follows the left linear flow forward in time from (0, y0) to
// its next point on x = 0; the right map follows the right flow (taken with
// b = 0) backward in time. Both return the ordinate of that point.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

#include "pwlcycles/canonical_form.hpp"
#include "pwlcycles/errors.hpp"

namespace pwlcycles {

using real = long double;

inline constexpr real kInf = std::numeric_limits<real>::infinity();

/// Numeric counterpart of ExactHalfMapDomain: I = [lambda, mu), image (mu1, y_at_lambda].
struct HalfMapDomain {
  Side side = Side::Left;
  real lambda = 0;
  real mu = kInf;
  real mu1 = -kInf;
  real y_at_lambda = 0;
};

struct HalfMapValue {
  real y = 0;
  real dy = 0;  // derivative with respect to y0
};

namespace detail {

using State4 = std::array<real, 4>;  // x, y, and their derivatives with respect to y0

/// σ (A z + c) with A = ((T, −1), (D, 0)), c = (0, −a), plus the variational part.
struct LinearField {
  real T, D, a, sigma;
  void operator()(const State4& z, State4& dz, real /*t*/) const {
    dz[0] = sigma * (T * z[0] - z[1]);
    dz[1] = sigma * (D * z[0] - a);
    dz[2] = sigma * (T * z[2] - z[3]);
    dz[3] = sigma * (D * z[2]);
  }
};

inline LinearField field_of(const SideParams& p, real sigma) {
  return {p.T.to_long_double(), p.D.to_long_double(), p.a.to_long_double(), sigma};
}

/// Which half-plane each side lives in, and the time direction of its map.
inline real region_sign(Side s) { return s == Side::Left ? -1.0L : 1.0L; }
inline real map_direction(Side s) { return s == Side::Left ? 1.0L : -1.0L; }

inline real focus_frequency(const SideParams& p) {
  const real T = p.T.to_long_double(), D = p.D.to_long_double();
  const real w2 = D - T * T / 4;
  return w2 > 0 ? std::sqrt(w2) : 0;
}

inline real time_horizon(const SideParams& p, real y0) {
  const real w = focus_frequency(p);
  if (w > 0) return 2 * (2 * static_cast<real>(M_PI) / w);
  const real a = std::fabs(p.a.to_long_double());
  const real rate = std::fabs(p.T.to_long_double()) + std::sqrt(std::fabs(p.D.to_long_double()));
  const real h = 100 * (1 + std::fabs(y0) / std::max(a, 1e-300L)) + 100 / std::max(rate, 1e-3L);
  return std::min(h, 1e7L);
}

struct Return {
  State4 z;
  real t;
  real xdot, ydot;
};

/// Integrates from (0, y_start) until the orbit, having entered the region,
/// meets x = 0 again. Throws NoReturn past the horizon.
inline Return first_return(const LinearField& f, real region, real y_start, real tol, real horizon) {
  namespace ode = boost::numeric::odeint;
  using Stepper = ode::runge_kutta_fehlberg78<State4, real, State4, real>;
  auto controlled = ode::make_controlled(tol, tol, Stepper());
  Stepper plain;

  State4 z{0, y_start, 0, 1};
  real t = 0;
  real dt = horizon / 2000;
  bool entered = false;
  std::size_t steps = 0;
  while (t < horizon) {
    if (++steps > 2000000) throw NoReturn("step budget exhausted");
    const State4 z_prev = z;
    const real t_prev = t;
    if (controlled.try_step(f, z, t, dt) == ode::fail) continue;
    auto x_after = [&](real theta) {
      if (theta == 0) return region * z_prev[0];
      State4 out;
      plain.do_step(f, z_prev, t_prev, out, theta);
      return region * out[0];
    };
    real h = t - t_prev;
    const real sx = region * z[0];
    if (sx > 0) {
      if (!entered) {
        entered = true;
        continue;
      }
      // A grazing orbit can leave and re-enter within one step; look at the
      // minimum of s·x when s·ẋ turns from negative to positive.
      State4 d0, d1;
      f(z_prev, d0, t_prev);
      f(z, d1, t);
      if (!(region * d0[0] < 0 && region * d1[0] > 0)) continue;
      auto xdot_after = [&](real theta) {
        State4 out, d;
        plain.do_step(f, z_prev, t_prev, out, theta);
        f(out, d, t_prev + theta);
        return region * d[0];
      };
      boost::uintmax_t it = 200;
      auto m = boost::math::tools::toms748_solve(xdot_after, real(0), h, region * d0[0], region * d1[0],
                                                 boost::math::tools::eps_tolerance<real>(60), it);
      const real theta_min = (m.first + m.second) / 2;
      if (x_after(theta_min) > 0) continue;
      h = theta_min;
    } else if (!entered) {
      // Overshot the whole excursion in one step: retry smaller. Repeated
      // failure means y_start is not in the map's domain.
      z = z_prev;
      t = t_prev;
      dt = h / 64;
      if (dt < horizon * 1e-30L) throw NoReturn("orbit does not enter the half-plane");
      continue;
    }
    // Locate x = 0 inside [t_prev, t_prev + h] with single steps from z_prev.
    real fa = x_after(0), fb = x_after(h);
    real theta = h;
    if (fb != 0 && fa > 0) {
      boost::uintmax_t iters = 200;
      auto bracket = boost::math::tools::toms748_solve(x_after, real(0), h, fa, fb,
                                                       boost::math::tools::eps_tolerance<real>(60), iters);
      theta = (bracket.first + bracket.second) / 2;
    }
    Return r;
    plain.do_step(f, z_prev, t_prev, r.z, theta);
    r.z[0] = 0;
    r.t = t_prev + theta;
    State4 dz;
    f(r.z, dz, r.t);
    r.xdot = dz[0];
    r.ydot = dz[1];
    return r;
  }
  throw NoReturn("no return to the section within the time horizon");
}

inline HalfMapValue integrate_map(const SideParams& p, Side side, real y0, real tol) {
  const LinearField f = field_of(p, map_direction(side));
  const Return r = first_return(f, region_sign(side), y0, tol, time_horizon(p, y0));
  HalfMapValue v;
  v.y = r.z[1];
  v.dy = std::fabs(r.xdot) > 0 ? r.z[3] - r.ydot * r.z[2] / r.xdot : kInf;
  return v;
}

/// The point where the orbit through the origin, followed against the map's
/// time direction, meets x = 0 again.
inline real tangency_preimage(const SideParams& p, Side side, real tol) {
  const LinearField f = field_of(p, -map_direction(side));
  return first_return(f, region_sign(side), 0, tol, time_horizon(p, 0)).z[1];
}

}  // namespace detail

struct HalfMapOptions {
  real tol = 1e-12L;
  bool richardson = true;
};

/// One half-map with its domain data resolved once.
class HalfMap {
 public:
  HalfMap(const CanonicalForm& cf, Side side, HalfMapOptions opt = {})
      : params_(cf.side(side)), side_(side), opt_(opt) {
    const auto [left, right] = halfmap_domains(cf);
    exact_ = side == Side::Left ? left : right;
    domain_.side = side;
    if (exact_.mu) domain_.mu = AlgebraicReal(*exact_.mu).approx();
    if (exact_.mu1) domain_.mu1 = AlgebraicReal(*exact_.mu1).approx();
    if (exact_.lambda_positive) domain_.lambda = detail::tangency_preimage(params_, side, opt_.tol * 1e-3L);
    if (exact_.y_at_lambda_negative) domain_.y_at_lambda = accurate(0).y;
  }

  const HalfMapDomain& domain() const { return domain_; }
  const ExactHalfMapDomain& exact_domain() const { return exact_; }
  Side side() const { return side_; }

  /// y(y0) and y'(y0). Boundary values are returned exactly: 0 at λ when λ > 0,
  /// and 0 at y0 = 0 when the origin is a fixed tangency.
  HalfMapValue evaluate(real y0) const {
    const real scale = std::max<real>(1, std::fabs(y0));
    if (!(y0 < domain_.mu)) throw NoReturn("y0 beyond the domain endpoint mu");
    if (exact_.lambda_positive) {
      if (std::fabs(y0 - domain_.lambda) <= opt_.tol * scale) return {0, kInf};
      if (y0 < domain_.lambda) throw NoReturn("y0 below lambda");
    } else if (y0 < 0) {
      throw NoReturn("negative y0");
    } else if (y0 == 0) {
      if (!exact_.y_at_lambda_negative) return {0, -1};
      return accurate(0);
    }
    return accurate(y0);
  }

  real operator()(real y0) const { return evaluate(y0).y; }

 private:
  HalfMapValue accurate(real y0) const {
    const auto coarse = detail::integrate_map(params_, side_, y0, opt_.tol);
    if (!opt_.richardson) return coarse;
    // Near λ the return is almost tangent and |y'| blows up; the agreement
    // threshold is scaled by that condition number. Strongly expanding foci
    // return far out, so the image size counts too.
    const auto fine = detail::integrate_map(params_, side_, y0, opt_.tol / 16);
    const real scale = std::max({real(1), std::fabs(y0), std::fabs(fine.y)});
    const real accept = 10 * opt_.tol * scale * std::max<real>(1, std::fabs(fine.dy));
    if (std::fabs(fine.y - coarse.y) <= accept) return fine;
    const auto finer = detail::integrate_map(params_, side_, y0, opt_.tol / 256);
    if (std::fabs(finer.y - fine.y) <= accept) return finer;
    throw ToleranceFailure("half-map refinements disagree at y0 = " + std::to_string(static_cast<double>(y0)));
  }

  SideParams params_;
  Side side_;
  HalfMapOptions opt_;
  ExactHalfMapDomain exact_;
  HalfMapDomain domain_;
};

inline real halfmap_eval(const CanonicalForm& cf, Side side, real y0, real tol = 1e-12L) {
  return HalfMap(cf, side, {tol, true})(y0);
}

inline HalfMapDomain numeric_domain(const CanonicalForm& cf, Side side, real tol = 1e-12L) {
  return HalfMap(cf, side, {tol, true}).domain();
}

// ---- the cubic ODE oracle -------------------------------------------------------

namespace detail {

/// Closed-form linear flow for D > 0 (both boundary flags need a focus):
/// returns the ordinate where the orbit from (0, y_start) under σ(Az + c)
/// meets x = 0 again after entering the region.
inline real closed_form_return(const SideParams& p, real sigma, real region, real y_start) {
  const real T = p.T.to_long_double(), D = p.D.to_long_double(), a = p.a.to_long_double();
  const real w = std::sqrt(D - T * T / 4);
  const real xs = a / D, ys = T * a / D;
  const real tau = sigma * T;
  const real w0x = -xs, w0y = y_start - ys;
  // (σA − τ/2 I) w0
  const real mx = (sigma * T - tau / 2) * w0x - sigma * w0y;
  const real my = sigma * D * w0x - (tau / 2) * w0y;
  auto point = [&](real t) {
    const real e = std::exp(tau * t / 2), c = std::cos(w * t), s = std::sin(w * t) / w;
    return std::make_pair(xs + e * (c * w0x + s * mx), ys + e * (c * w0y + s * my));
  };
  const real period = 2 * static_cast<real>(M_PI) / w;
  const int n = 20000;
  real t_prev = 0;
  bool entered = false;
  for (int k = 1; k <= 2 * n; ++k) {
    const real t = period * k / n;
    const real sx = region * point(t).first;
    if (sx > 0) {
      entered = true;
      t_prev = t;
      continue;
    }
    if (!entered) throw SingularCrossing("orbit does not enter the half-plane");
    boost::uintmax_t iters = 200;
    auto g = [&](real tt) { return region * point(tt).first; };
    auto br = boost::math::tools::toms748_solve(g, t_prev, t, boost::math::tools::eps_tolerance<real>(60), iters);
    return point((br.first + br.second) / 2).second;
  }
  throw SingularCrossing("closed-form orbit does not return");
}

using State1 = std::array<real, 1>;

inline real W_value(const SideParams& p, real y) {
  const real T = p.T.to_long_double(), D = p.D.to_long_double(), a = p.a.to_long_double();
  return D * y * y - a * T * y + a * a;
}

/// Integrates dy1/dy0 = y0 W(y1) / (y1 W(y0)) from (from, y1) to `to`.
inline real integrate_graph(const SideParams& p, real from, real y1, real to, real tol) {
  namespace ode = boost::numeric::odeint;
  using Stepper = ode::runge_kutta_fehlberg78<State1, real, State1, real>;
  State1 s{y1};
  auto rhs = [&p](const State1& z, State1& dz, real y0) {
    const real den = z[0] * W_value(p, y0);
    if (den == 0) throw SingularCrossing("graph ODE hits y1 = 0 or a root of W");
    dz[0] = y0 * W_value(p, z[0]) / den;
  };
  if (to != from) ode::integrate_adaptive(ode::make_controlled(tol, tol, Stepper()), rhs, s, from, to, (to - from) / 1000);
  return s[0];
}

}  // namespace detail

/// Independent evaluation of the same half-map through the cubic ODE
/// dy1/dy0 = y0 W(y1) / (y1 W(y0)), started from the boundary of the domain.
inline real halfmap_eval_via_cubic(const CanonicalForm& cf, Side side, real y0, real tol = 1e-12L) {
  const SideParams p = cf.side(side);
  const auto [left, right] = halfmap_domains(cf);
  const ExactHalfMapDomain& d = side == Side::Left ? left : right;
  const real sigma = detail::map_direction(side), region = detail::region_sign(side);
  if (p.a.is_zero()) {
    // W = D y², so the ODE reads dy1/dy0 = y1/y0 and every graph is a ray;
    // a half turn of the homogeneous focus fixes the slope.
    const real w = detail::focus_frequency(p);
    if (!(w > 0)) throw SingularCrossing("a = 0 without a focus");
    if (y0 < 0) throw NoReturn("negative y0");
    return -std::exp(sigma * p.T.to_long_double() / 2 * static_cast<real>(M_PI) / w) * y0;
  }

  if (d.lambda_positive) {
    const real lambda = detail::closed_form_return(p, -sigma, region, 0);
    if (y0 < lambda) throw NoReturn("y0 below lambda");
    if (y0 == lambda) return 0;
    // Near (λ, 0) the graph is vertical in y1; march in s = −y1 instead until y0 is reached.
    namespace ode = boost::numeric::odeint;
    using Stepper = ode::runge_kutta_fehlberg78<detail::State1, real, detail::State1, real>;
    auto rhs = [&p](const detail::State1& z, detail::State1& dz, real s) {
      const real den = z[0] * detail::W_value(p, -s);
      if (den == 0) throw SingularCrossing("graph ODE hits y0 = 0 or a root of W");
      dz[0] = s * detail::W_value(p, z[0]) / den;
    };
    auto controlled = ode::make_controlled(tol, tol, Stepper());
    Stepper plain;
    detail::State1 z{lambda};
    real s = 0, ds = 1e-3L * std::max<real>(1, lambda);
    for (std::size_t steps = 0; steps < 1000000; ++steps) {
      const detail::State1 z_prev = z;
      const real s_prev = s;
      if (controlled.try_step(rhs, z, s, ds) == ode::fail) continue;
      if (z[0] < y0) continue;
      auto g = [&](real theta) {
        if (theta == 0) return z_prev[0] - y0;
        detail::State1 out;
        plain.do_step(rhs, z_prev, s_prev, out, theta);
        return out[0] - y0;
      };
      boost::uintmax_t iters = 200;
      auto br = boost::math::tools::toms748_solve(g, real(0), s - s_prev, boost::math::tools::eps_tolerance<real>(60),
                                                  iters);
      return -(s_prev + (br.first + br.second) / 2);
    }
    throw NoReturn("graph ODE did not reach y0");
  }
  if (d.y_at_lambda_negative) {
    const real y_at_zero = detail::closed_form_return(p, sigma, region, 0);
    return detail::integrate_graph(p, 0, y_at_zero, y0, tol);
  }
  // Both ends at the origin: start from the series y1 = −y0 + c2 y0² + c3 y0³ + c4 y0⁴.
  if (y0 <= 0) return 0;
  const real T = p.T.to_long_double(), D = p.D.to_long_double(), a = p.a.to_long_double();
  const real c2 = -2 * T / (3 * a);
  const real c3 = -4 * T * T / (9 * a * a);
  const real c4 = 2 * T * (9 * D - 22 * T * T) / (135 * a * a * a);
  const real length = std::fabs(a) / std::max({std::fabs(T), std::sqrt(std::fabs(D)), 1e-300L});
  const real eps = std::min(y0, 1e-3L * length);
  const real start = -eps + c2 * eps * eps + c3 * eps * eps * eps + c4 * eps * eps * eps * eps;
  return detail::integrate_graph(p, eps, start, y0, tol);
}

}  // namespace pwlcycles

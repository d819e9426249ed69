#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pwlcycles/bound_engine.hpp"
#include "pwlcycles/displacement.hpp"

using namespace pwlcycles;

namespace {

struct Example {
  const char* name;
  CanonicalForm cf;
};

std::vector<Example> examples() {
  return {{"huan_yang", fixtures::huan_yang_cf()}, {"freire", fixtures::freire_cf()}, {"gasull", fixtures::gasull_cf()}};
}

/// Regular points of one half-map, staying clear of λ.
std::vector<real> regular_points(const HalfMap& m, real hi, int n) {
  const real lo = m.domain().lambda + 0.05L;
  std::vector<real> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

int sign_changes(const std::vector<DisplacementSample>& scan) {
  int changes = 0, last = 0;
  for (const auto& s : scan) {
    if (!s.inside_domain || s.delta == 0) continue;
    const int sg = s.delta > 0 ? 1 : -1;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

}  // namespace

TEST(HalfMap, CenterIsReflection) {
  const CanonicalForm cf = fixtures::center_cf();
  const HalfMap left(cf, Side::Left), right(cf, Side::Right);
  for (real y : {0.1L, 1.0L, 2.5L, 40.0L}) {
    EXPECT_NEAR(static_cast<double>(left(y)), static_cast<double>(-y), 1e-10 * static_cast<double>(y));
    EXPECT_NEAR(static_cast<double>(right(y)), static_cast<double>(-y), 1e-10 * static_cast<double>(y));
    EXPECT_NEAR(static_cast<double>(halfmap_eval_via_cubic(cf, Side::Left, y)), static_cast<double>(-y), 1e-12);
  }
}

TEST(HalfMap, HuanYangBoundaryValues) {
  const CanonicalForm cf = fixtures::huan_yang_cf();
  const HalfMap left(cf, Side::Left), right(cf, Side::Right);
  const real lambda = left.domain().lambda;
  EXPECT_GT(lambda, 2.0L);
  EXPECT_LT(lambda, 2.1L);
  EXPECT_EQ(left(lambda), 0);
  EXPECT_EQ(right(0), 0);
  // Continuity into the boundary values.
  EXPECT_LT(left(lambda + 1e-8L), 0);
  EXPECT_GT(left(lambda + 1e-8L), -1e-3L);
  EXPECT_LT(right(1e-6L), 0);
  EXPECT_GT(right(1e-6L), -2e-6L);
  EXPECT_THROW(left(lambda - 1e-3L), NoReturn);
}

TEST(HalfMap, FreireRightLambda) {
  const CanonicalForm cf = fixtures::freire_cf();
  const HalfMap right(cf, Side::Right);
  EXPECT_GT(right.domain().lambda, 0);
  EXPECT_EQ(right(right.domain().lambda), 0);
  EXPECT_THROW(right(right.domain().lambda / 2), NoReturn);
}

TEST(HalfMap, LambdaMatchesClosedFormFlow) {
  for (const auto& [name, cf] : examples()) {
    for (Side s : {Side::Left, Side::Right}) {
      const HalfMap m(cf, s);
      if (!m.exact_domain().lambda_positive) continue;
      const real closed = detail::closed_form_return(cf.side(s), -detail::map_direction(s), detail::region_sign(s), 0);
      EXPECT_NEAR(static_cast<double>(m.domain().lambda), static_cast<double>(closed), 1e-10) << name;
    }
  }
}

TEST(HalfMap, NegativeImageAtZero) {
  // Left focus with a < 0, T > 0: λ = 0 and y(0) < 0.
  CanonicalForm cf = fixtures::huan_yang_cf();
  cf.T_L = Rational(1) / Rational(5);
  const HalfMap left(cf, Side::Left);
  ASSERT_TRUE(left.exact_domain().y_at_lambda_negative);
  EXPECT_EQ(left.domain().lambda, 0);
  EXPECT_LT(left.domain().y_at_lambda, 0);
  EXPECT_NEAR(static_cast<double>(left(0)), static_cast<double>(left.domain().y_at_lambda), 1e-12);
  for (real y : {0.3L, 1.0L, 4.0L}) {
    const real a = left(y), b = halfmap_eval_via_cubic(cf, Side::Left, y);
    EXPECT_NEAR(static_cast<double>(a), static_cast<double>(b), 1e-9 * std::fabs(static_cast<double>(a)));
  }
}

TEST(HalfMap, DerivativeMatchesDifferenceQuotient) {
  const CanonicalForm cf = fixtures::gasull_cf();
  for (Side s : {Side::Left, Side::Right}) {
    const HalfMap m(cf, s);
    for (real y : {3.0L, 5.0L, 9.0L}) {
      const real h = 1e-5L;
      const real fd = (m(y + h) - m(y - h)) / (2 * h);
      EXPECT_NEAR(static_cast<double>(m.evaluate(y).dy), static_cast<double>(fd), 1e-6);
    }
  }
}

TEST(HalfMap, CubicOracleHuanYangLeft) {
  const CanonicalForm cf = fixtures::huan_yang_cf();
  const HalfMap left(cf, Side::Left);
  for (real y : regular_points(left, 40, 50)) {
    const real a = left(y), b = halfmap_eval_via_cubic(cf, Side::Left, y);
    EXPECT_LE(std::fabs(a - b), 100 * 1e-12L * std::max<real>(1, std::fabs(a))) << "y0 = " << static_cast<double>(y);
  }
}

TEST(HalfMap, CubicOracleGasullRight) {
  const CanonicalForm cf = fixtures::gasull_cf();
  const HalfMap right(cf, Side::Right);
  for (real y : regular_points(right, 30, 20)) {
    const real a = right(y), b = halfmap_eval_via_cubic(cf, Side::Right, y);
    EXPECT_LE(std::fabs(a - b), 1e-9L * std::fabs(a)) << "y0 = " << static_cast<double>(y);
  }
}

TEST(HalfMap, ParabolicSideIsReflection) {
  // T = D = 0, a > 0: x = −y0 t + a t²/2 returns at t = 2y0/a with y = −y0.
  const CanonicalForm cf = fixtures::nonfocus_cf();
  const HalfMap left(cf, Side::Left);
  for (real y : {0.01L, 1.0L, 7.0L}) EXPECT_NEAR(static_cast<double>(left(y)), static_cast<double>(-y), 1e-11);
}

TEST(HalfMapProperties, StrictlyDecreasing) {
  for (const auto& [name, cf] : examples()) {
    for (Side s : {Side::Left, Side::Right}) {
      const HalfMap m(cf, s);
      real prev = 1;
      for (real y : regular_points(m, 50, 60)) {
        const real v = m(y);
        EXPECT_LT(v, prev) << name;
        EXPECT_LE(v, 0) << name;
        prev = v;
      }
    }
  }
}

TEST(HalfMapProperties, ConvexityInFocusFocus) {
  for (const auto& [name, cf] : examples()) {
    for (Side s : {Side::Left, Side::Right}) {
      const HalfMap m(cf, s);
      const int expected = s == Side::Left ? -cf.T_L.sign() : cf.T_R.sign();
      const auto pts = regular_points(m, 60, 40);
      for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const real d2 = m(pts[i + 1]) - 2 * m(pts[i]) + m(pts[i - 1]);
        EXPECT_EQ(d2 > 0 ? 1 : -1, expected) << name << " " << to_string(s) << " y0=" << static_cast<double>(pts[i]);
      }
    }
  }
}

TEST(HalfMapProperties, RandomFociAgreeWithCubicOracle) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 40; ++trial) {
    CanonicalForm cf;
    cf.T_L = oracle::random_rational(rng, 6, 5);
    cf.D_L = abs(oracle::random_rational(rng, 9, 4)) + Rational(1);
    cf.a_L = oracle::random_rational(rng, 9, 4);
    cf.T_R = oracle::random_rational(rng, 6, 5);
    cf.D_R = abs(oracle::random_rational(rng, 9, 4)) + Rational(1);
    cf.a_R = oracle::random_rational(rng, 9, 4);
    cf.b_star = Rational(0);
    const auto h = check_hypotheses(cf);
    if (!h.condition_H() || !h.focus_focus() || cf.a_L.is_zero() || cf.a_R.is_zero()) continue;
    ++checked;
    for (Side s : {Side::Left, Side::Right}) {
      const HalfMap m(cf, s);
      for (real y : {m.domain().lambda + 0.5L, m.domain().lambda + 2.0L}) {
        const real a = m(y), b = halfmap_eval_via_cubic(cf, s, y);
        EXPECT_LE(std::fabs(a - b), 1e-9L * std::max<real>(1, std::fabs(a))) << cf.T_L << " " << cf.a_L;
      }
    }
  }
  EXPECT_EQ(checked, 40);
}

TEST(Displacement, HuanYangScanHasThreeSignChanges) {
  const CanonicalForm cf = fixtures::huan_yang_cf();
  const auto scan = displacement_scan(cf, cf.b_star, 60, 400);
  ASSERT_EQ(scan.size(), 400u);
  EXPECT_EQ(sign_changes(scan), 3);
  for (const auto& s : scan) EXPECT_TRUE(s.inside_domain) << s.y0 << " " << s.error;
}

TEST(Displacement, CenterIsFlat) {
  const CanonicalForm cf = fixtures::center_cf();
  const Displacement d(cf, cf.b_star);
  const auto scan = displacement_scan(d, 50, 128);
  for (const auto& s : scan) EXPECT_LT(std::fabs(s.delta), 1e-9L * std::max<real>(1, s.y0));
  const CycleSet cycles = find_cycles(d, scan);
  EXPECT_TRUE(cycles.continuum);
  EXPECT_EQ(cycles.count, 0u);
  EXPECT_TRUE(sign_consistency_check(cf, cf.b_star, cycles, build_F(cf, cf.b_star)));
}

TEST(Displacement, IncreasingInB) {
  for (const auto& [name, cf] : examples()) {
    const Rational h = Rational(1) / Rational(1000);
    const Displacement d0(cf, cf.b_star), up(cf, cf.b_star + h), down(cf, cf.b_star - h);
    const real lo = std::max(d0.lower(), std::max(up.lower(), down.lower()));
    for (int i = 1; i <= 30; ++i) {
      const real y = lo + 0.02L + i * 0.5L;
      const real base = d0.evaluate(y).delta;
      EXPECT_GT(up.evaluate(y).delta - base, 0) << name << " y0=" << static_cast<double>(y);
      EXPECT_LT(down.evaluate(y).delta - base, 0) << name << " y0=" << static_cast<double>(y);
    }
  }
}

TEST(Displacement, DefaultRangeCoversLargeAmplitudes) {
  EXPECT_NEAR(static_cast<double>(offset_scale(fixtures::huan_yang_cf(), fixtures::huan_yang_cf().b_star)), 5.35, 0.01);
  EXPECT_NEAR(static_cast<double>(asymptotic_slope(fixtures::huan_yang_cf())), 0.230, 0.002);
  EXPECT_LT(std::fabs(asymptotic_slope(fixtures::freire_cf())), 1e-7L);
  EXPECT_GT(default_y0_max(fixtures::freire_cf(), fixtures::freire_cf().b_star), 1000);
  EXPECT_THROW(displacement_scan(fixtures::huan_yang_cf(), Rational(0), 10, 1), InvalidArgument);
}

TEST(FindCycles, ThreeAlternatingCyclesInEachExample) {
  for (const auto& [name, cf] : examples()) {
    const Displacement d(cf, cf.b_star);
    const auto scan = displacement_scan(d, default_y0_max(cf, cf.b_star), 400);
    const CycleSet cycles = find_cycles(d, scan);
    ASSERT_EQ(cycles.count, 3u) << name;
    EXPECT_FALSE(cycles.continuum);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& z = cycles.zeros[i];
      EXPECT_EQ(z.multiplicity, Multiplicity::Simple) << name;
      EXPECT_LT(z.residual, 1e-9L) << name;
      if (i > 0) {
        EXPECT_GT(z.y0_root, cycles.zeros[i - 1].y0_root);
        EXPECT_NE(z.stability, cycles.zeros[i - 1].stability) << name;
      }
    }
    EXPECT_TRUE(sign_consistency_check(cf, cf.b_star, cycles, build_F(cf, cf.b_star))) << name;
  }
}

TEST(FindCycles, HuanYangInnermostCycleHugsLambda) {
  const CanonicalForm cf = fixtures::huan_yang_cf();
  const Displacement d(cf, cf.b_star);
  const CycleSet cycles = find_cycles(d, displacement_scan(d, 60, 400));
  ASSERT_EQ(cycles.count, 3u);
  EXPECT_NEAR(static_cast<double>(cycles.zeros[0].y0_root), 2.094, 0.01);
  EXPECT_NEAR(static_cast<double>(cycles.zeros[1].y0_root), 3.829, 0.01);
  EXPECT_NEAR(static_cast<double>(cycles.zeros[2].y0_root), 7.406, 0.01);
  EXPECT_EQ(cycles.zeros[1].stability, Stability::Attracting);
}

TEST(FindCycles, ConditionPSystemHasAtMostOne) {
  const CanonicalForm cf = fixtures::condition_p_cf();
  ASSERT_EQ(dispatch_bound(cf).upper_bound, std::optional<int>(1));
  const Displacement d(cf, cf.b_star);
  const CycleSet cycles = find_cycles(d, displacement_scan(d, default_y0_max(cf, cf.b_star), 400));
  EXPECT_LE(cycles.count, 1u);
}

TEST(FindCycles, NonFocusFixtureWithinCertifiedBound) {
  const CanonicalForm cf = fixtures::nonfocus_cf();
  const BoundReport r = dispatch_bound(cf);
  ASSERT_TRUE(r.upper_bound);
  const Displacement d(cf, cf.b_star);
  const auto scan = displacement_scan(d, default_y0_max(cf, cf.b_star), 400);
  for (const auto& s : scan) EXPECT_TRUE(s.inside_domain) << s.y0 << " " << s.error;
  EXPECT_LE(find_cycles(d, scan).count, static_cast<std::size_t>(*r.upper_bound));
}

TEST(FindCycles, SignConsistencyDetectsMismatch) {
  const CanonicalForm cf = fixtures::gasull_cf();
  const Displacement d(cf, cf.b_star);
  CycleSet cycles = find_cycles(d, displacement_scan(d, 30, 200));
  ASSERT_FALSE(cycles.zeros.empty());
  cycles.zeros[0].delta_prime = -cycles.zeros[0].delta_prime;
  EXPECT_FALSE(sign_consistency_check(cf, cf.b_star, cycles, build_F(cf, cf.b_star)));
  EXPECT_THROW(sign_consistency_check(cf, cf.b_star, cycles, build_F(cf, Rational(0))), InvalidArgument);
}

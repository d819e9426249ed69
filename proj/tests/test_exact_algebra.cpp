#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pwlcycles/bipoly.hpp"
#include "pwlcycles/real_roots.hpp"
#include "pwlcycles/resultant.hpp"

using namespace pwlcycles;

namespace {

UniPoly P(std::initializer_list<int> c) {
  std::vector<Rational> v;
  for (int x : c) v.emplace_back(x);
  return UniPoly(std::move(v));
}

UniPoly power(const UniPoly& p, int e) {
  UniPoly acc(1);
  for (int i = 0; i < e; ++i) acc = acc * p;
  return acc;
}

}  // namespace

TEST(Rational, ParsesFractionsAndDecimalsExactly) {
  EXPECT_EQ(Rational::parse("0.038"), Rational(19) / Rational(500));
  EXPECT_EQ(Rational::parse("-6/4"), Rational(-3) / Rational(2));
  EXPECT_EQ(Rational::parse("1.5e-3"), Rational(3) / Rational(2000));
  EXPECT_EQ(Rational::parse("  42 "), Rational(42));
  EXPECT_EQ(Rational::parse("2E2"), Rational(200));
  EXPECT_THROW(Rational::parse("1/0"), ParseError);
  EXPECT_THROW(Rational::parse("abc"), ParseError);
  EXPECT_THROW(Rational::parse(""), ParseError);
  EXPECT_THROW(Rational::parse("1/-2"), ParseError);
}

TEST(Rational, PrintParseRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Rational r = oracle::random_rational(rng, 1000000, 99991);
    EXPECT_EQ(Rational::parse(r.to_string()), r);
    EXPECT_GT(r.denominator(), 0);
  }
  const Rational big = Rational::parse("96440395023695996806/95571015330487000887");
  EXPECT_EQ(Rational::parse(big.to_string()), big);
  EXPECT_NEAR(static_cast<double>(big.to_long_double()), 1.0090967, 1e-6);
}

TEST(Polynomial, ArithmeticAndNormalization) {
  const UniPoly p = P({-1, 0, 1});
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(P({1, 2, 0, 0}).degree(), 1);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_EQ(P({-1, 1}) * P({1, 1}), p);
  auto [q, r] = divmod(P({-1, 0, 0, 1}), P({-1, 1}));
  EXPECT_EQ(q, P({1, 1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(p.reflect(), p);
  EXPECT_EQ(P({0, 1, 1}).reflect(), P({0, -1, 1}));
  EXPECT_EQ(normalized(P({-2, 0, -4})), P({1, 0, 2}));
  EXPECT_EQ(gcd(P({-1, 0, 1}), P({1, 2, 1})), P({1, 1}));
}

TEST(Resultant, EvaluatesFirstAtRootOfSecond) {
  // Res_x(x² − y, x − 1) = 1 − y
  BiPoly f = BiPoly::variable(Var::Y0) * BiPoly::variable(Var::Y0) - BiPoly::variable(Var::Y1);
  BiPoly g = BiPoly::variable(Var::Y0) - BiPoly::constant(1);
  EXPECT_EQ(eliminate(f, g, Var::Y0), P({1, -1}));
}

TEST(Resultant, CommonFactorGivesZero) {
  const BiPoly x = BiPoly::variable(Var::Y0), y = BiPoly::variable(Var::Y1);
  const BiPoly common = x - BiPoly::constant(2);
  const BiPoly f = common * (x * y + BiPoly::constant(3));
  const BiPoly g = common * (x * x - y);
  EXPECT_TRUE(eliminate(f, g, Var::Y0).is_zero());
}

TEST(Resultant, ZeroInputYieldsZero) {
  EXPECT_TRUE(resultant(UniPoly{}, P({1, 1})).is_zero());
}

TEST(Resultant, MatchesSylvesterOverQ) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const UniPoly f = oracle::random_poly(rng, 6, 9), g = oracle::random_poly(rng, 6, 9);
    if (f.degree() < 1 && g.degree() < 1) continue;
    EXPECT_EQ(resultant(f, g), oracle::sylvester_resultant(f, g)) << f << " | " << g;
  }
}

TEST(Resultant, AntisymmetryRule) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const UniPoly f = oracle::random_poly(rng, 7, 20), g = oracle::random_poly(rng, 7, 20);
    const Rational sign = (f.degree() * g.degree()) % 2 == 0 ? Rational(1) : Rational(-1);
    EXPECT_EQ(resultant(f, g), sign * resultant(g, f));
  }
}

TEST(Resultant, BivariateSpecializationMatchesSylvester) {
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const BiPoly f = oracle::random_bipoly(rng, 2, 5), g = oracle::random_bipoly(rng, 3, 5);
    if (f.degree_in(Var::Y0) < 1 || g.degree_in(Var::Y0) < 1) continue;
    const UniPoly r = eliminate(f, g, Var::Y0);
    for (int k = -3; k <= 3; ++k) {
      const Rational y(k);
      const UniPoly fs = f.specialize(Var::Y1, y), gs = g.specialize(Var::Y1, y);
      if (fs.degree() != f.degree_in(Var::Y0) || gs.degree() != g.degree_in(Var::Y0)) continue;
      EXPECT_EQ(r.evaluate(y), oracle::sylvester_resultant(fs, gs));
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Sturm, CountsOnHalfOpenIntervals) {
  const UniPoly p = P({0, -1, 0, 1});
  EXPECT_EQ(sturm_count(p, Rational(-2), Rational(2)), 3u);
  EXPECT_EQ(sturm_count(p, Rational(-1), Rational(1)), 2u);  // (−1, 1] holds 0 and 1
  EXPECT_EQ(sturm_count(p, Rational(-1), Rational(0)), 1u);
  EXPECT_EQ(sturm_count(P({1, 0, 1}), ExtendedRational::neg_inf(), ExtendedRational::pos_inf()), 0u);
  EXPECT_EQ(sturm_count(power(P({-3, 1}), 4), ExtendedRational::neg_inf(), ExtendedRational::pos_inf()), 1u);
  EXPECT_THROW(sturm_count(UniPoly{}, Rational(0), Rational(1)), ZeroPolynomial);
  EXPECT_THROW(sturm_count(p, Rational(1), Rational(1)), InvalidArgument);
}

TEST(Descartes, SignChanges) {
  EXPECT_EQ(descartes_positive_bound(P({2, -3, 1})), 2u);
  EXPECT_EQ(descartes_positive_bound(P({1, 1, 1})), 0u);
  EXPECT_EQ(descartes_positive_bound(P({-1, 0, 0, 1})), 1u);
  EXPECT_THROW(descartes_positive_bound(UniPoly{}), ZeroPolynomial);
}

TEST(RootCounting, WithMultiplicity) {
  const UniPoly p = power(P({0, 1}), 2) * power(P({1, 1}), 3) * P({1, 0, 1});
  const RootCount rc = count_roots_with_multiplicity(p);
  EXPECT_EQ(rc.negative, 3u);
  EXPECT_EQ(rc.zero, 2u);
  EXPECT_EQ(rc.positive, 0u);
  EXPECT_EQ(rc.nonreal, 2u);
  const RootCount six = count_roots_with_multiplicity(power(P({-3, 1}), 6));
  EXPECT_EQ(six.positive, 6u);
  EXPECT_EQ(six.total(), 6u);
}

TEST(RootCounting, SquareFreeDecomposition) {
  const UniPoly p = P({-1, 1}) * power(P({2, 1}), 2) * power(P({1, 0, 1}), 3);
  const auto parts = square_free_decomposition(p);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].first, P({-1, 1}));
  EXPECT_EQ(parts[1].first, P({2, 1}));
  EXPECT_EQ(parts[1].second, 2u);
  EXPECT_EQ(parts[2].first, P({1, 0, 1}));
  EXPECT_EQ(parts[2].second, 3u);
}

TEST(Isolation, SimpleCases) {
  auto iv = isolate_real_roots(P({-2, 0, 1}));
  ASSERT_EQ(iv.size(), 2u);
  EXPECT_GE(iv[0].lo, Rational(-2));
  EXPECT_LE(iv[0].hi, Rational(-1));
  EXPECT_GE(iv[1].lo, Rational(1));
  EXPECT_LE(iv[1].hi, Rational(2));

  auto three = isolate_real_roots(P({0, -1, 0, 1}));
  ASSERT_EQ(three.size(), 3u);
  EXPECT_TRUE(three[1].exact());
  EXPECT_EQ(three[1].lo, Rational(0));
  EXPECT_LE(three[0].hi, three[1].lo);
  EXPECT_LE(three[1].hi, three[2].lo);

  EXPECT_THROW(isolate_real_roots(P({1, 2, 1})), NotSquareFree);
}

TEST(Isolation, RefinementNarrowsAroundRoot) {
  const UniPoly p = P({-2, 0, 1});
  auto iv = isolate_real_roots(p);
  const auto narrow = refine(p, iv[1], Rational(1) / Rational(1000000));
  EXPECT_LE(narrow.width(), Rational(1) / Rational(1000000));
  EXPECT_LT(narrow.lo * narrow.lo, Rational(2));
  EXPECT_GT(narrow.hi * narrow.hi, Rational(2));
  AlgebraicReal sqrt2(p, iv[1]);
  EXPECT_NEAR(static_cast<double>(sqrt2.approx()), 1.4142135623730951, 1e-15);
  EXPECT_EQ(sqrt2.compare(Rational(141) / Rational(100)), 1);
  EXPECT_EQ(sqrt2.compare(Rational(3) / Rational(2)), -1);
}

TEST(Properties, SturmAgreesWithIsolationAndDescartesBoundsPositives) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const UniPoly p = oracle::random_poly(rng, 8, 6);
    if (p.degree() < 1) continue;
    const UniPoly sf = square_free_part(p);
    const std::size_t sturm = sturm_count(p, ExtendedRational::neg_inf(), ExtendedRational::pos_inf());
    EXPECT_EQ(sturm, isolate_real_roots(sf).size()) << p;
    const RootCount rc = count_roots_with_multiplicity(p);
    EXPECT_EQ(rc.total(), static_cast<std::size_t>(p.degree()));
    EXPECT_EQ(rc.nonreal % 2, 0u);
    const std::size_t d = descartes_positive_bound(p);
    EXPECT_GE(d, rc.positive);
    EXPECT_EQ((d - rc.positive) % 2, 0u) << p;
  }
}

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "irrmeasure/hyperg.hpp"
#include "irrmeasure/quadrature.hpp"
#include "oracles.hpp"

using namespace irrmeasure;

namespace {

std::vector<Rational> q(std::initializer_list<Rational> xs) { return xs; }

std::vector<std::pair<unsigned long, unsigned long>> exponents(unsigned long n_max) {
  std::vector<std::pair<unsigned long, unsigned long>> out;
  for (unsigned long n = 2; n <= n_max; ++n)
    for (unsigned long m = 1; m < n; ++m)
      if (std::gcd(m, n) == 1) out.emplace_back(m, n);
  return out;
}

}  // namespace

TEST(XCoeffs, Examples) {
  EXPECT_EQ(x_coeffs(1, 3, 1).coeffs, q({1, 2}));
  EXPECT_EQ(x_coeffs(1, 2, 2).coeffs, q({1, 10, 5}));
  EXPECT_EQ(x_coeffs(2, 5, 0).coeffs, q({1}));
  EXPECT_EQ(x_coeffs(1, 3, 2).coeffs, q({1, 7, Rational(14, 5)}));
  EXPECT_THROW(x_coeffs(2, 4, 1), DomainError);
  EXPECT_THROW(x_coeffs(3, 3, 1), DomainError);
  EXPECT_THROW(x_coeffs(0, 3, 1), DomainError);
}

TEST(XCoeffs, MatchesRecurrenceOracle) {
  for (auto [m, n] : exponents(6)) {
    auto polys = oracle::recurrence_polys(m, n, 30);
    for (unsigned long r = 0; r <= 30; ++r) {
      HypPoly p = x_coeffs(m, n, r);
      ASSERT_EQ(p.coeffs.size(), r + 1);
      ASSERT_EQ(p.coeffs, polys[r]) << m << "/" << n << " r=" << r;
    }
  }
}

TEST(XStar, Examples) {
  HypPoly p = x_coeffs(1, 3, 1);
  EXPECT_EQ(x_star_eval(p, Rational(2), Rational(3)), 7);
  for (unsigned long r : {0, 3, 8}) EXPECT_EQ(x_star_eval(x_coeffs(2, 5, r), Rational(0), Rational(1)), 1);
  FieldPtr L = TowerField::make(BaseField(), BaseElem::rational(BaseField(), -3));
  const BaseField K;
  TowerElem eta(L, BaseElem::rational(K, Rational(5, 2)), BaseElem::rational(K, Rational(1, 2)));
  TowerElem want(L, BaseElem::rational(K, Rational(15, 2)), BaseElem::rational(K, Rational(1, 2)));
  EXPECT_EQ(x_star_eval(p, eta, conj(eta)), want);
  EXPECT_EQ(x_star_eval(x_coeffs(1, 3, 4), Rational(5), Rational(0)), x_coeffs(1, 3, 4).coeffs[4] * 625);
}

TEST(XStar, HomogeneousInBothArguments) {
  for (unsigned long r = 0; r <= 12; ++r) {
    HypPoly p = x_coeffs(3, 7, r);
    Rational x(5, 3), y(-2, 7), s(7, 4);
    EXPECT_EQ(x_star_eval(p, x * s, y * s), x_star_eval(p, x, y) * pow(s, r));
    EXPECT_EQ(x_star_eval(p, x, y), pow(y, r) * p(x / y));
  }
}

TEST(Invariants, DenominatorExamples) {
  EXPECT_EQ(denom_D(1, 3, 1), 1);
  EXPECT_EQ(denom_D(1, 3, 2), 5);
  EXPECT_EQ(denom_D(1, 2, 2), 1);
}

TEST(Invariants, NumeratorExamples) {
  EXPECT_EQ(numer_N(1, 3, Integer(1), 1), 1);
  EXPECT_EQ(numer_N(1, 3, Integer(3), 1), 3);
  EXPECT_EQ(numer_N(1, 3, Integer(3), 2), 9);
  EXPECT_EQ(shifted_coeffs(x_coeffs(1, 3, 2), Integer(3)), q({Rational(54, 5), Rational(-189, 5), Rational(126, 5)}));
  EXPECT_EQ(shifted_coeffs(x_coeffs(1, 3, 1), Integer(1)), q({3, -2}));
}

TEST(Invariants, DenominatorIsMinimal) {
  for (auto [m, n] : exponents(6))
    for (unsigned long r = 0; r <= 30; ++r) {
      HypPoly p = x_coeffs(m, n, r);
      Integer D = denom_D(p);
      for (const auto& c : p.coeffs) ASSERT_TRUE(is_integer(c * D));
      for (const auto& pp : factor(D)) {
        Integer smaller = D / pp.prime;
        bool all = true;
        for (const auto& c : p.coeffs) all = all && is_integer(c * smaller);
        ASSERT_FALSE(all) << m << "/" << n << " r=" << r;
      }
    }
}

TEST(Invariants, NumeratorIsMaximalGcd) {
  for (auto [m, n] : exponents(5))
    for (Integer d : {Integer(1), Integer(n), Integer(2 * n)})
      for (unsigned long r = 0; r <= 20; ++r) {
        auto s = shifted_coeffs(x_coeffs(m, n, r), d);
        Integer N = numer_N(m, n, d, r);
        Integer g = 0;
        for (const auto& c : s) g = gcd(g, c.get_num());
        ASSERT_EQ(N, g);
        for (const auto& c : s) ASSERT_EQ(c.get_num() % N, 0);
      }
}

// D and N carry no m in their notation, but they do depend on m.
TEST(Invariants, DependOnM) {
  EXPECT_EQ(denom_D(1, 3, 2), 5);
  EXPECT_EQ(denom_D(2, 3, 2), 1);
  EXPECT_EQ(numer_N(1, 3, Integer(6), 1), 3);
  EXPECT_EQ(numer_N(2, 3, Integer(6), 1), 6);
  std::size_t differing = 0, compared = 0;
  for (unsigned long n = 2; n <= 6; ++n)
    for (unsigned long r = 0; r <= 30; ++r) {
      std::vector<Integer> Ds;
      for (unsigned long m = 1; m < n; ++m)
        if (std::gcd(m, n) == 1) Ds.push_back(denom_D(m, n, r));
      ++compared;
      if (std::adjacent_find(Ds.begin(), Ds.end(), std::not_equal_to<>()) != Ds.end()) ++differing;
    }
  EXPECT_GT(differing, 0u);
  EXPECT_LT(differing, compared);
}

TEST(CalN, Examples) {
  for (unsigned long n : {2, 3, 5, 6, 12}) EXPECT_EQ(cal_N(Integer(1), n).exact(), Integer(1));
  ValuationProduct a = cal_N(Integer(3), 3);
  ASSERT_EQ(a.factors.size(), 1u);
  EXPECT_EQ(a.factors[0].prime, 3);
  EXPECT_EQ(a.factors[0].exponent, 1);
  EXPECT_EQ(a.exact(), Integer(3));
  ValuationProduct b = cal_N(Integer(9), 3);
  ASSERT_EQ(b.factors.size(), 1u);
  EXPECT_EQ(b.factors[0].exponent, Rational(3, 2));
  EXPECT_FALSE(b.exact());
  EXPECT_TRUE(overlaps(b.value(128), pow(sqrt(Interval(3, 128)), 3)));
  ValuationProduct c = cal_N(Integer(12), 6);
  ASSERT_EQ(c.factors.size(), 2u);
  EXPECT_EQ(c.factors[0].exponent, 2);  // min(2, 1 + 1)
  EXPECT_EQ(c.factors[1].exponent, 1);  // min(1, 1 + 1/2)
  EXPECT_TRUE(overlaps(c.power(3, 128), Interval(Integer(12 * 12 * 12), 128)));
}

TEST(CalN, NumeratorGrowthBoundedBelow) {
  // N_{d,n,r} / calN^r over the sweep; the smallest value seen is 1/9.
  for (unsigned long n = 2; n <= 5; ++n)
    for (unsigned long m = 1; m < n; ++m) {
      if (std::gcd(m, n) != 1) continue;
      for (Integer d : {Integer(1), Integer(n), Integer(n * n), Integer(2 * n)}) {
        ValuationProduct cn = cal_N(d, n);
        for (unsigned long r = 0; r <= 60; ++r) {
          Interval lhs(Integer(numer_N(m, n, d, r) * 9), 256);
          ASSERT_NE(less(lhs, cn.power(r, 256)), Verdict::pass) << m << "/" << n << " d=" << d << " r=" << r;
        }
      }
    }
}

TEST(GammaRatios, Examples) {
  auto a = gamma_ratio_bounds(1, 3, 0);
  EXPECT_EQ(a.lower, 1);
  EXPECT_EQ(a.upper, 1);
  auto b = gamma_ratio_bounds(1, 3, 2);
  EXPECT_EQ(b.lower, Rational(9, 5));
  EXPECT_EQ(b.upper, Rational(14, 9));
  auto c = gamma_ratio_bounds(1, 2, 1);
  EXPECT_EQ(c.lower, 2);
  EXPECT_EQ(c.upper, Rational(3, 2));
}

TEST(GammaRatios, AgreeWithMpfrGamma) {
  const mpfr_prec_t prec = 320;
  mpfr_t lo, hi, diff, tol;
  mpfr_inits2(prec, lo, hi, diff, tol, nullptr);
  mpfr_set_ui_2exp(tol, 1, -200, MPFR_RNDN);
  for (auto [m, n] : exponents(6))
    for (unsigned long r = 0; r <= 50; ++r) {
      auto g = gamma_ratio_bounds(m, n, r);
      oracle::gamma_ratios_mpfr(m, n, r, prec, lo, hi);
      mpfr_sub_q(diff, lo, g.lower.get_mpq_t(), MPFR_RNDN);
      mpfr_abs(diff, diff, MPFR_RNDN);
      ASSERT_LT(mpfr_cmp(diff, tol), 0) << m << "/" << n << " r=" << r;
      mpfr_sub_q(diff, hi, g.upper.get_mpq_t(), MPFR_RNDN);
      mpfr_abs(diff, diff, MPFR_RNDN);
      ASSERT_LT(mpfr_cmp(diff, tol), 0) << m << "/" << n << " r=" << r;
    }
  mpfr_clears(lo, hi, diff, tol, nullptr);
}

TEST(CDBound, Examples) {
  auto iv = [](long v) { return Interval(v, 128); };
  EXPECT_TRUE(check_CD_bound(1, 3, Integer(1), iv(10), iv(10), 5).pass());
  BoundReport fail = check_CD_bound(1, 3, Integer(1), iv(1), iv(1), 2);
  EXPECT_FALSE(fail.pass());
  EXPECT_NE(std::find(fail.failures.begin(), fail.failures.end(), 2ul), fail.failures.end());
  EXPECT_EQ(fail.rows[2].lhs, 9);
  EXPECT_EQ(fail.rows[2].verdict, Verdict::fail);
  BoundReport zero = check_CD_bound(1, 3, Integer(1), iv(2), iv(1), 0);
  EXPECT_TRUE(zero.pass());
  EXPECT_EQ(zero.rows[0].lhs, 1);
}

TEST(CDBound, LeftSideDefinition) {
  for (unsigned long r = 0; r <= 15; ++r) {
    auto g = gamma_ratio_bounds(1, 3, r);
    Rational mx = std::max({Rational(1), g.lower, g.upper});
    Rational want = mx * denom_D(1, 3, r) / numer_N(1, 3, Integer(6), r);
    EXPECT_EQ(cd_left_side(1, 3, Integer(6), r), want);
  }
}

TEST(Calibrate, PassesItsOwnRange) {
  for (auto [m, n, d] : {std::tuple{1ul, 2ul, 1l}, {1ul, 3ul, 3l}, {1ul, 3ul, 6l}, {2ul, 5ul, 5l}}) {
    Calibration cal = calibrate_CD(m, n, Integer(d), 200);
    EXPECT_TRUE(cal.empirical);
    EXPECT_TRUE(cal.C.is_point() && cal.D.is_point());
    EXPECT_TRUE(check_CD_bound(m, n, Integer(d), cal.C, cal.D, 200).pass()) << m << "/" << n << " d=" << d;
  }
  Calibration small = calibrate_CD(1, 3, Integer(3), 100);
  EXPECT_TRUE(check_CD_bound(1, 3, Integer(3), small.C, small.D, 100).pass());
  EXPECT_THROW(calibrate_CD(1, 3, Integer(3), 5), DomainError);
}

TEST(Remainder, Examples) {
  const Precision p = 256;
  Ball one(Interval(1, p));
  Ball z0 = remainder_difference(one, 2, 5, 7, p);
  EXPECT_TRUE(z0.contains_zero());
  EXPECT_TRUE(remainder_integral(one, 2, 5, 7, p).contains_zero());
  Ball z = Ball::from_rational(Rational(3, 2), 0, p);
  Ball d = remainder_difference(z, 1, 3, 0, p);
  Ball want = Ball(pow(Interval(Rational(3, 2), p), Interval(Rational(1, 3), p)) - Interval(1, p));
  EXPECT_TRUE(overlaps(d, want));
  EXPECT_NEAR(d.re_mid(), 0.144714242553, 1e-11);
  EXPECT_TRUE(overlaps(remainder_integral(z, 1, 3, 0, p), d));
  Ball i = Ball::from_rational(0, 1, p);
  Ball di = remainder_difference(i, 1, 2, 0, p);
  EXPECT_NEAR(di.re_mid(), std::sqrt(0.5) - 1, 1e-15);
  EXPECT_NEAR(di.im_mid(), std::sqrt(0.5), 1e-15);
  Ball w = Ball::from_rational(Rational(9, 10), Rational(1, 10), p);
  EXPECT_TRUE(overlaps(remainder_integral(w, 2, 5, 3, p), remainder_difference(w, 2, 5, 3, p)));
  EXPECT_THROW(remainder_difference(Ball::from_rational(-2, 0, p), 1, 3, 1, p), DomainError);
  EXPECT_THROW(remainder_integral(Ball::from_rational(0, 0, p), 1, 3, 1, p), DomainError);
}

TEST(Remainder, SymmetryThroughXStar) {
  // z^r X(1/z) = X*(1, z) exactly at rational z.
  const Precision p = 256;
  for (unsigned long r = 0; r <= 8; ++r)
    for (Rational z : {Rational(3, 2), Rational(7, 10), Rational(5, 4)}) {
      HypPoly x = x_coeffs(2, 5, r);
      Rational rev = x_star_eval(x, Rational(1), z);
      Rational fwd = x(z);
      Ball zm = Ball(pow(Interval(z, p), Interval(Rational(2, 5), p)));
      Ball built = zm * Interval(rev, p) - Ball(Interval(fwd, p));
      EXPECT_TRUE(overlaps(built, remainder_difference(Ball::from_rational(z, 0, p), 2, 5, r, p)));
    }
}

TEST(Remainder, IntegralMatchesDifferenceOnRandomSweep) {
  std::mt19937_64 gen(99);
  const Precision p = 256;
  for (int k = 0; k < 40; ++k) {
    Rational re, im;
    do {
      re = oracle::uniform(gen, Rational(1, 2), Rational(3, 2));
      im = oracle::uniform(gen, Rational(-1, 2), Rational(1, 2));
    } while ((re - 1) * (re - 1) + im * im >= Rational(1, 4));
    unsigned long n = 2 + gen() % 4;
    unsigned long m = 1 + gen() % (n - 1);
    while (std::gcd(m, n) != 1) m = 1 + gen() % (n - 1);
    unsigned long r = gen() % 11;
    Ball z = Ball::from_rational(re, im, p);
    Ball a = remainder_difference(z, m, n, r, p);
    Ball b = remainder_integral(z, m, n, r, p);
    ASSERT_TRUE(overlaps(a, b)) << to_string(z) << " " << m << "/" << n << " r=" << r;
    EXPECT_LT(std::abs(a.re_mid() - b.re_mid()) + std::abs(a.im_mid() - b.im_mid()), 1e-30);
  }
}

TEST(Quadrature, PolynomialAndTranscendental) {
  const Precision p = 192;
  Ball cubic = integrate([](const Ball& t) { return t * t * t; }, 0, 2, p);
  EXPECT_TRUE(cubic.re().contains(Rational(4)));
  EXPECT_LT(cubic.radius(), 1e-40);
  Ball e = integrate([](const Ball& t) { return exp(t); }, 0, 1, p);
  Interval want = exp(Interval(1, p)) - Interval(1, p);
  EXPECT_TRUE(overlaps(e, Ball(want)));
  EXPECT_LT(e.radius(), 1e-40);
  GaussRule g = gauss_legendre(8, p);
  Interval sum(0, p);
  for (const auto& w : g.weights) sum += w;
  EXPECT_TRUE(sum.contains(Rational(2)));
}

#include <gtest/gtest.h>

#include <cmath>

#include "irrmeasure/measures.hpp"

using namespace irrmeasure;

namespace {

const Precision kPrec = 256;

Interval iv(const Rational& x) { return Interval(x, kPrec); }

FieldPtr over_q(long t) { return TowerField::make(BaseField(), BaseElem::rational(BaseField(), Rational(t))); }

TowerElem elem(const FieldPtr& L, const Rational& x, const Rational& y) {
  const BaseField& K = L->base();
  return TowerElem(L, BaseElem::rational(K, x), BaseElem::rational(K, y));
}

const Calibration& cal_1_3_6() {
  static const Calibration cal = calibrate_CD(1, 3, Integer(6), 200);
  return cal;
}

CorollaryInstance cor(long u1, long u2, long t, unsigned long n) {
  CorollaryInstance ci;
  ci.u1 = u1;
  ci.u2 = u2;
  ci.t = t;
  ci.n = n;
  return ci;
}

// u1 = 100, u2 = 1, t = -3, n = 3 with constants from one shared calibration.
CorollaryInstance cor_100() {
  CorollaryInstance ci = cor(100, 1, -3, 3);
  ci.C = cal_1_3_6().C;
  ci.D = cal_1_3_6().D;
  return ci;
}

Theorem2Instance thm_100() {
  CorollaryInstance ci = cor_100();
  Theorem2Instance inst = to_theorem2(ci, corollary_chain(ci));
  inst.C = ci.C;
  inst.D = ci.D;
  return inst;
}

void expect_kappa_consistent(const MeasureReport& rep) {
  ASSERT_TRUE(rep.ok()) << rep.first_failure()->name;
  EXPECT_TRUE(overlaps(exp(rep.kappa * log(rep.E)), rep.Q));
}

}  // namespace

TEST(Kappa, Examples) {
  EXPECT_TRUE(kappa(iv(7), iv(7)).contains(Rational(1)));
  EXPECT_TRUE(overlaps(kappa(iv(10), iv(100)), iv(2)));
  Interval k = kappa(iv(Rational(111, 10)), iv(1200));
  EXPECT_NEAR(k.mid_d(), std::log(1200.0) / std::log(11.1), 1e-14);
  EXPECT_GE(k.mid_d(), 2.945);
  EXPECT_LT(k.mid_d(), 2.946);
  EXPECT_THROW(kappa(iv(1), iv(3)), DomainError);
  EXPECT_THROW(kappa(iv(Rational(1, 2)), iv(3)), DomainError);
}

TEST(LemmaC, Examples) {
  Interval e = exp(iv(1));
  EXPECT_TRUE(overlaps(lemma_c(iv(1), iv(Rational(1, 2)), e, e), iv(2) * e * e));
  EXPECT_TRUE(overlaps(lemma_c(iv(1), iv(1), iv(2), iv(4)), iv(128)));
  EXPECT_TRUE(overlaps(lemma_c(iv(1), iv(Rational(1, 10)), iv(3), iv(3)), iv(18)));
}

TEST(Prop1, GeneralExamples) {
  ApproxSystem sys;
  Ball one(iv(1)), zero(iv(0)), th = Ball::from_rational(Rational(2, 7), Rational(1, 3), kPrec);
  sys.theta = {one, th};
  sys.beta_conj = {zero, one};
  sys.gamma_conj = {one, zero};
  sys.k0 = iv(1);
  sys.l0 = iv(Rational(1, 100));
  sys.E = iv(4);
  sys.Q = iv(4);
  sys.tau_abs = iv(1);
  MeasureReport a = prop1_general(sys);
  EXPECT_TRUE(overlaps(a.alpha, th));

  sys.theta = {one, Ball(iv(2))};
  sys.gamma_conj = {one, one};
  MeasureReport b = prop1_general(sys);
  EXPECT_TRUE(overlaps(b.alpha, Ball(iv(Rational(2, 3)))));
  EXPECT_TRUE(overlaps(b.c, iv(64)));
  expect_kappa_consistent(b);

  // A common unit-modulus factor on beta and gamma leaves alpha alone.
  Ball u = Ball::from_rational(Rational(3, 5), Rational(4, 5), kPrec);
  sys.beta_conj = {zero * u, one * u};
  sys.gamma_conj = {one * u, one * u};
  EXPECT_TRUE(overlaps(prop1_general(sys).alpha, b.alpha));
}

TEST(Prop1, QuadraticExamples) {
  ApproxSystem sys;
  Ball one(iv(1));
  sys.theta = {one, one};
  sys.beta_conj = {Ball(iv(0)), Ball(iv(2))};
  sys.gamma_conj = {one, one};
  sys.k0 = iv(1);
  sys.l0 = iv(1);
  sys.E = iv(2);
  sys.Q = iv(4);
  sys.tau_abs = iv(1);
  MeasureReport q = prop1_quadratic(sys);
  EXPECT_TRUE(overlaps(q.alpha, one));  // ratio of traces (0 + 2) / (1 + 1)
  EXPECT_TRUE(overlaps(q.c, iv(256)));
  EXPECT_EQ(q.find("beta_over_gamma_not_in_K")->verdict, Verdict::pass);
  // With tau = 1 the c formula is the general one for s = 2.
  MeasureReport g = prop1_general(sys);
  EXPECT_TRUE(overlaps(g.alpha, q.alpha));
  EXPECT_TRUE(overlaps(g.c, q.c));
  sys.beta_conj = {one, one};
  EXPECT_EQ(prop1_quadratic(sys).find("beta_over_gamma_not_in_K")->verdict, Verdict::indeterminate);
}

TEST(Corollary, ChainFiveOneMinusThree) {
  CorollaryChain ch = corollary_chain(Integer(5), Integer(1), Integer(-3), 3);
  EXPECT_EQ(ch.g1, 1);
  EXPECT_EQ(ch.g2, 1);
  EXPECT_EQ(ch.g3, 1);
  EXPECT_EQ(ch.core_tg2g3, -3);
  EXPECT_EQ(ch.d1, 1);
  EXPECT_EQ(ch.g4, 3);
  EXPECT_EQ(ch.g5, 1);
  EXPECT_EQ(ch.g, ScaledRoot(TowerElem::from_rational(ch.field, Rational(1, 3)), 3));
  EXPECT_EQ(ch.d, 3);
  EXPECT_EQ(cal_N(ch.d, 3).exact(), Integer(3));
}

TEST(Corollary, ChainTenOneMinusThree) {
  CorollaryChain ch = corollary_chain(Integer(10), Integer(1), Integer(-3), 3);
  EXPECT_EQ(ch.g1, 1);
  EXPECT_EQ(ch.g2, 1);
  EXPECT_EQ(ch.g3, 4);
  EXPECT_EQ(ch.core_tg2g3, -3);
  EXPECT_EQ(ch.d1, 2);
  EXPECT_EQ(ch.g4, 3);
  EXPECT_EQ(ch.g5, 1);
  EXPECT_EQ(ch.g, ScaledRoot(TowerElem::from_rational(ch.field, Rational(1, 6)), 3));
  EXPECT_EQ(ch.d, 6);
  EXPECT_EQ(cal_N(ch.d, 3).exact(), Integer(3));
}

TEST(Corollary, ChainThreeOneFive) {
  CorollaryChain ch = corollary_chain(Integer(3), Integer(1), Integer(5), 2);
  EXPECT_EQ(ch.g1, 1);
  EXPECT_EQ(ch.g2, 1);
  EXPECT_EQ(ch.g3, 1);
  EXPECT_EQ(ch.core_tg2g3, 5);
  EXPECT_EQ(ch.d1, 1);
  EXPECT_EQ(ch.g4, 1);
  EXPECT_EQ(ch.g5, 1);
  EXPECT_EQ(ch.g, ScaledRoot::one(ch.field));
  EXPECT_EQ(ch.d, 1);
}

TEST(Corollary, Rejections) {
  EXPECT_THROW(corollary_chain(Integer(5), Integer(1), Integer(4), 3), DomainError);
  EXPECT_THROW(corollary_chain(Integer(5), Integer(0), Integer(-3), 3), DomainError);
  EXPECT_THROW(corollary1(cor(2, 1, 4, 3)), DomainError);
  MeasureReport rep = corollary1(cor(3, 1, 5, 2));
  EXPECT_FALSE(rep.ok());
  EXPECT_EQ(rep.first_failure()->name, "E_gt_1");
}

TEST(Corollary, HundredInstance) {
  MeasureReport rep = corollary1(cor_100());
  expect_kappa_consistent(rep);
  EXPECT_EQ(rep.d, 6);
  EXPECT_NEAR(rep.E.mid_d(), 20.6767, 1e-3);
  EXPECT_NEAR(rep.Q.mid_d(), 644.944, 1e-2);
  EXPECT_NEAR(rep.kappa.mid_d(), 2.13574, 1e-4);
  EXPECT_NEAR(rep.alpha.re_mid(), -100.00888, 1e-4);
  EXPECT_TRUE(rep.alpha.is_real());
  // min |u1 -+ sqrt(u1^2 - u2^2 t)| = sqrt(10003) - 100.
  Interval mn = sqrt(iv(10003)) - iv(100);
  EXPECT_NEAR(mn.mid_d(), 0.0149988, 1e-7);
  Interval E = sqrt(iv(Rational(1, 12))) * cal_N(Integer(6), 3).value(kPrec) / (rep.D * mn);
  EXPECT_TRUE(overlaps(E, rep.E));
  EXPECT_FALSE(rep.empirical);
  EXPECT_TRUE(corollary1(cor(100, 1, -3, 3)).empirical);
}

TEST(HSequence, Examples) {
  CorollaryChain ch = corollary_chain(Integer(5), Integer(1), Integer(-3), 3);
  for (unsigned long r : {0ul, 2ul, 10ul}) {
    HTerm h = h_sequence(ch, Integer(-3), r);
    EXPECT_EQ(h.h_r, ScaledRoot::one(ch.field));
    EXPECT_TRUE(overlaps(h.bound, sqrt(Interval(6, 128))));
  }
  HTerm odd = h_sequence(ch, Integer(-3), 1);
  EXPECT_EQ(odd.h_r, ScaledRoot(TowerElem::from_rational(ch.field, 1), 3));
  EXPECT_EQ(odd.h_over_g_r, 3);
  EXPECT_EQ(less(odd.h_r.abs(128), odd.bound), Verdict::pass);
  for (long u1 = -30; u1 <= 30; ++u1)
    for (long t : {-7, -3, -1, 2, 5, 13}) {
      if (u1 * u1 == t) continue;
      CorollaryChain c = corollary_chain(Integer(u1), Integer(3), Integer(t), 4);
      for (unsigned long r = 0; r < 6; ++r) {
        HTerm h = h_sequence(c, Integer(t), r);
        ASSERT_NE(less(h.bound, h.h_r.abs(128)), Verdict::pass);
      }
    }
}

TEST(Theorem2, MatchesCorollary) {
  MeasureReport c = corollary1(cor_100());
  MeasureReport t = theorem2(thm_100());
  expect_kappa_consistent(t);
  EXPECT_EQ(t.d, c.d);
  EXPECT_TRUE(overlaps(t.E, c.E));
  EXPECT_TRUE(overlaps(t.Q, c.Q));
  EXPECT_TRUE(overlaps(t.kappa, c.kappa));
  EXPECT_TRUE(overlaps(t.alpha, c.alpha));
  // h = sqrt|2t| and |sqrt tau| = 1 after scaling eta into Q[sqrt t], so the c factors coincide.
  EXPECT_TRUE(overlaps(t.c, c.c));
}

TEST(Theorem2, ScaleInvarianceOfAlpha) {
  Theorem2Instance a = thm_100();
  Theorem2Instance b = a;
  TowerElem k = elem(a.field, 7, 0);
  b.beta *= k;
  b.gamma *= k;
  MeasureReport ra = theorem2(a), rb = theorem2(b);
  EXPECT_TRUE(overlaps(ra.alpha, rb.alpha));
  EXPECT_EQ(rb.find("beta_over_gamma_not_in_K")->verdict, Verdict::pass);
  EXPECT_EQ(less(ra.c, rb.c), Verdict::pass);
}

TEST(Theorem2, SignCoupling) {
  Theorem2Instance plus = thm_100();
  Theorem2Instance minus = plus;
  minus.sign = -1;
  MeasureReport rp = theorem2(plus), rm = theorem2(minus);
  EXPECT_FALSE(overlaps(rp.alpha, rm.alpha));
  EXPECT_FALSE(rp.preconditions.empty());
  EXPECT_EQ(rp.preconditions.size(), rm.preconditions.size());
  // beta sigma(gamma) = sigma(beta) gamma makes the two signs degenerate together.
  Theorem2Instance same = plus;
  same.gamma = elem(plus.field, 2, 0);
  same.beta = elem(plus.field, 6, 0);
  MeasureReport s = theorem2(same);
  EXPECT_EQ(s.find("beta_over_gamma_not_in_K")->verdict, Verdict::fail);
  EXPECT_FALSE(s.ok());
}

TEST(Theorem2, PreconditionFailuresAreReported) {
  FieldPtr L = over_q(5);
  Theorem2Instance inst = Theorem2Instance::make(L, elem(L, 1, 0), elem(L, 0, 1), elem(L, 3, 1), 1, 2, 1,
                                                 ScaledRoot::one(L));
  inst.C = Interval(2, kPrec);
  inst.D = Interval(2, kPrec);
  MeasureReport rep = theorem2(inst);
  EXPECT_FALSE(rep.ok());
  EXPECT_EQ(rep.find("ratio_condition")->verdict, Verdict::fail);
  inst.eta = elem(L, 3, -1);
  EXPECT_EQ(theorem2(inst).find("ratio_condition")->verdict, Verdict::pass);
  inst.eta = elem(L, Rational(1, 2), 1);
  EXPECT_EQ(theorem2(inst).find("eta_alg_integer")->verdict, Verdict::fail);
}

TEST(RatioCondition, ExactBranches) {
  FieldPtr L5 = over_q(5);
  EXPECT_EQ(ratio_condition(elem(L5, Rational(3, 2), Rational(-1, 2)), kPrec).verdict, Verdict::pass);
  EXPECT_EQ(ratio_condition(elem(L5, Rational(3, 2), Rational(1, 2)), kPrec).verdict, Verdict::fail);
  EXPECT_EQ(ratio_condition(elem(L5, 1, -3), kPrec).verdict, Verdict::fail);  // negative ratio
  EXPECT_EQ(ratio_condition(elem(L5, 0, 1), kPrec).verdict, Verdict::fail);   // ratio -1
  FieldPtr L3 = over_q(-3);
  EXPECT_EQ(ratio_condition(elem(L3, 50, 1), kPrec).verdict, Verdict::pass);
  EXPECT_EQ(ratio_condition(elem(L3, 0, 1), kPrec).verdict, Verdict::fail);
}

TEST(LargestD, IsMaximal) {
  for (long t : {-3, -7, 5, 13})
    for (long u1 = 1; u1 <= 40; ++u1)
      for (long u2 : {1, 2, 3, 6}) {
        if (u1 * u1 == u2 * u2 * t) continue;
        CorollaryChain ch = corollary_chain(Integer(u1), Integer(u2), Integer(t), 6);
        TowerElem diff = conj(ch.eta) - ch.eta;
        Integer d = largest_d(ch.eta, ch.g);
        ASSERT_EQ(d, ch.d);
        auto with_d = [&](const Integer& k) {
          return ch.g * ScaledRoot(TowerElem::from_rational(ch.field, Rational(k)), 1);
        };
        ASSERT_TRUE(is_alg_integer_quotient(diff, with_d(d)));
        Rational norm = (diff * diff / ch.g.square()).absolute_norm();
        for (const auto& pp : factor(Integer(abs(norm.get_num()))))
          ASSERT_FALSE(is_alg_integer_quotient(diff, with_d(d * pp.prime))) << u1 << " " << u2 << " " << t;
      }
}

TEST(Theorem3, UnitDiskInstance) {
  // K = Q(i), tau = 2, eta = 24(1 - i) + (1 + i) sqrt 2: |eta| = 34, |sigma(eta) - eta| = 4, d = 4.
  const BaseField K = BaseField::imaginary(1);
  FieldPtr L = TowerField::make(K, BaseElem::rational(K, 2));
  TowerElem eta(L, BaseElem(K, 24, -24), BaseElem(K, 1, 1));
  Theorem2Instance inst = Theorem2Instance::make(L, TowerElem::from_rational(L, 1), TowerElem::root(L), eta, 1, 3, 1,
                                                 ScaledRoot::one(L));
  inst.C = Interval(1, kPrec);
  inst.D = Interval(1, kPrec);
  MeasureReport rep = theorem3(inst);
  expect_kappa_consistent(rep);
  EXPECT_EQ(rep.d, 4);
  EXPECT_TRUE(overlaps(rep.E, iv(Rational(15, 2))));
  EXPECT_TRUE(overlaps(rep.Q, iv(136)));
  EXPECT_TRUE(overlaps(rep.kappa, log(iv(136)) / log(iv(Rational(15, 2)))));
  EXPECT_EQ(rep.find("unit_disk_condition")->verdict, Verdict::pass);
  EXPECT_TRUE(overlaps(alpha_theta(inst, kPrec).alpha, rep.alpha));
  // The same instance through theorem2: same alpha, the larger c coefficient.
  MeasureReport r2 = theorem2(inst);
  EXPECT_TRUE(overlaps(r2.alpha, rep.alpha));
  EXPECT_NE(r2.provenance.at("c").find("5 h"), std::string::npos);
  EXPECT_NE(rep.provenance.at("c").find("2 h"), std::string::npos);
  EXPECT_TRUE(overlaps(r2.l0 / rep.l0, iv(Rational(238, 100))));
}

TEST(Theorem3, RejectsRationalBaseAndDegenerateEta) {
  MeasureReport rep = theorem3(thm_100());
  EXPECT_EQ(rep.find("base_imaginary_quadratic")->verdict, Verdict::fail);
  const BaseField K = BaseField::imaginary(1);
  FieldPtr L = TowerField::make(K, BaseElem::rational(K, 2));
  Theorem2Instance inst = Theorem2Instance::make(L, TowerElem::from_rational(L, 1), TowerElem::root(L),
                                                 TowerElem::from_rational(L, 5), 1, 3, 1, ScaledRoot::one(L));
  inst.C = Interval(1, kPrec);
  inst.D = Interval(1, kPrec);
  MeasureReport deg = theorem3(inst);
  EXPECT_FALSE(deg.ok());
  EXPECT_EQ(deg.find("eta_not_in_K")->verdict, Verdict::fail);
}

TEST(MuAbsorb, Examples) {
  FieldPtr L5 = over_q(5);
  MuAbsorption m1 = mu_absorb(L5, MuKind::minus_one);
  EXPECT_EQ(m1.nu, TowerElem::root(L5));
  EXPECT_EQ(m1.mu, elem(L5, -1, 0));
  FieldPtr L3 = over_q(-3);
  MuAbsorption z6 = mu_absorb(L3, MuKind::zeta6);
  EXPECT_EQ(z6.nu, elem(L3, 3, 1));
  EXPECT_EQ(z6.mu, elem(L3, Rational(1, 2), Rational(1, 2)));
  EXPECT_EQ(pow(z6.mu, 6), elem(L3, 1, 0));
  EXPECT_NE(pow(z6.mu, 2), elem(L3, 1, 0));
  EXPECT_NE(pow(z6.mu, 3), elem(L3, 1, 0));
  MuAbsorption z3 = mu_absorb(BaseField(), BaseElem::rational(BaseField(), -3), MuKind::zeta3);
  EXPECT_EQ(z3.nu, elem(z3.field, Rational(1, 2), Rational(-1, 2)));
  EXPECT_EQ(pow(z3.mu, 3), elem(z3.field, 1, 0));
  EXPECT_NE(z3.mu, elem(z3.field, 1, 0));
  FieldPtr Li = over_q(-1);
  MuAbsorption mi = mu_absorb(Li, MuKind::i);
  EXPECT_EQ(mi.mu, TowerElem::root(Li));
  EXPECT_THROW(mu_absorb(L5, MuKind::zeta3), DomainError);
  EXPECT_THROW(mu_absorb(L3, MuKind::i), DomainError);
  const BaseField Ki = BaseField::imaginary(1);
  EXPECT_THROW(mu_absorb(Ki, BaseElem::rational(Ki, 3), MuKind::i), DomainError);
  EXPECT_EQ(parse_mu_kind("zeta6"), MuKind::zeta6);
  EXPECT_EQ(to_string(MuKind::zeta3), "zeta3");
  EXPECT_THROW(parse_mu_kind("zeta8"), DomainError);
}

TEST(MuAbsorb, TwistIsExactAndAlphaAgrees) {
  struct Case {
    long t;
    MuKind kind;
  };
  for (auto [t, kind] : {Case{-3, MuKind::minus_one}, Case{-3, MuKind::zeta3}, Case{-3, MuKind::zeta6},
                         Case{-1, MuKind::i}, Case{5, MuKind::minus_one}}) {
    FieldPtr L = over_q(t);
    TowerElem eta = elem(L, 11, t > 0 ? -2 : 1);
    MuAbsorption a = mu_absorb(L, kind);
    ASSERT_EQ(a.nu / conj(a.nu), a.mu);
    TowerElem twisted = a.nu * eta;
    ASSERT_EQ(a.mu * eta / conj(eta), twisted / conj(twisted));

    Theorem2Instance direct = Theorem2Instance::make(L, elem(L, 1, 0), TowerElem::root(L), eta, 1, 3, 1,
                                                     ScaledRoot::one(L));
    direct.C = Interval(2, kPrec);
    direct.D = Interval(2, kPrec);
    Theorem2Instance absorbed = direct;
    direct.mu = a.mu;
    absorbed.eta = twisted;
    absorbed.g *= a.nu;
    AlphaTheta x = alpha_theta(direct, kPrec), y = alpha_theta(absorbed, kPrec);
    EXPECT_TRUE(overlaps(x.alpha, y.alpha));
    EXPECT_EQ(to_string(x.alpha, 60), to_string(y.alpha, 60));
    EXPECT_EQ(to_string(theorem2(direct).alpha, 60), to_string(theorem2(absorbed).alpha, 60));
  }
}

TEST(KappaConsistency, AcrossRoutes) {
  expect_kappa_consistent(corollary1(cor_100()));
  expect_kappa_consistent(theorem2(thm_100()));
  expect_kappa_consistent(corollary1(cor(199, 1, -3, 3)));
}

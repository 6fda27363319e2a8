#include <gtest/gtest.h>

#include "irrmeasure/approxseq.hpp"

using namespace irrmeasure;

namespace {

CorollaryInstance cor(long u1, long u2, long t, unsigned long n) {
  CorollaryInstance ci;
  ci.u1 = u1;
  ci.u2 = u2;
  ci.t = t;
  ci.n = n;
  return ci;
}

TowerElem elem(const FieldPtr& L, const Rational& x, const Rational& y) {
  return TowerElem(L, BaseElem::rational(L->base(), x), BaseElem::rational(L->base(), y));
}

struct Prepared {
  Theorem2Instance inst;
  Integer d;
};

Prepared prepare(const CorollaryInstance& ci) {
  CorollaryChain ch = corollary_chain(ci);
  return {with_constants(to_theorem2(ci, ch), ch.d), ch.d};
}

}  // namespace

TEST(BuildPQ, RZeroIsOne) {
  for (auto ci : {cor(5, 1, -3, 3), cor(100, 1, -3, 3), cor(101, -1, 5, 3)}) {
    ApproximantPair a = build_pq(ci, 0);
    EXPECT_EQ(a.p, TowerElem::from_rational(a.p.field(), 1));
    EXPECT_EQ(a.q, a.p);
  }
}

TEST(BuildPQ, FiveOneMinusThreeFirstPair) {
  ApproximantPair a = build_pq(cor(5, 1, -3, 3), 1);
  const FieldPtr& L = a.p.field();
  EXPECT_EQ(a.p, elem(L, Rational(15, 2), Rational(1, 2)));
  EXPECT_EQ(a.q, conj(a.p));
  EXPECT_EQ(a.h_r, ScaledRoot(TowerElem::from_rational(L, 1), 3));
  EXPECT_EQ(a.scale, TowerElem::from_rational(L, 1));
  EXPECT_TRUE(a.p_int_cert && a.q_int_cert && a.conj_cert);
  ApproximantPair z = build_pq(cor(5, 1, -3, 3), 0);
  EXPECT_EQ(determinant(z, a), elem(L, 0, -1));
}

TEST(BuildPQ, ConjugacyAndIntegrality) {
  for (auto ci : {cor(5, 1, -3, 3), cor(10, 1, -3, 3), cor(100, 1, -3, 3), cor(101, -1, 5, 3), cor(7, 3, -1, 4),
                  cor(9, -2, 7, 5)}) {
    Prepared pr = prepare(ci);
    for (unsigned long r = 0; r <= 25; ++r) {
      ApproximantPair a = build_pq(pr.inst, pr.d, r);
      ASSERT_EQ(a.q, conj(a.p)) << ci.u1 << " r=" << r;
      ASSERT_TRUE(is_alg_integer(a.p) && is_alg_integer(a.q));
      ASSERT_TRUE(a.scale.in_base());
    }
  }
}

TEST(BuildPQ, WrongDivisorTripsCertificate) {
  Prepared pr = prepare(cor(5, 1, -3, 3));
  bool tripped = false;
  for (unsigned long r = 1; r <= 12 && !tripped; ++r) {
    try {
      build_pq(pr.inst, pr.d * 3, r);
    } catch (const InvariantError&) {
      tripped = true;
    }
  }
  EXPECT_TRUE(tripped);
}

TEST(BuildPQ, RatiosStayOutsideBase) {
  // With q = sigma(p), p_r q_{r+1} - p_{r+1} q_r vanishes exactly when p_r / p_{r+1} lies in K.
  Prepared pr = prepare(cor(5, 1, -3, 3));
  auto seq = build_sequence(pr.inst, 30);
  for (unsigned long r = 0; r < 30; ++r) {
    TowerElem det = determinant(seq[r], seq[r + 1]);
    TowerElem ratio = seq[r].p / seq[r + 1].p;
    EXPECT_EQ(det.is_zero(), ratio.in_base());
    EXPECT_FALSE(det.is_zero()) << r;
  }
}

TEST(Remainder, AgreesWithDirectEvaluation) {
  for (auto ci : {cor(5, 1, -3, 3), cor(101, -1, 5, 3)}) {
    Prepared pr = prepare(ci);
    for (unsigned long r = 0; r <= 15; ++r) {
      RemainderCheck rc = remainder_consistency(pr.inst, pr.d, r, 192);
      ASSERT_TRUE(rc.overlap) << ci.u1 << " r=" << r << " " << to_string(rc.direct) << " vs "
                              << to_string(rc.via_remainder);
    }
  }
}

TEST(Growth, HundredInstanceRates) {
  CorollaryInstance ci = cor(100, 1, -3, 3);
  Prepared pr = prepare(ci);
  MeasureReport rep = corollary1(ci);
  ASSERT_TRUE(rep.ok());
  GrowthReport g = verify_bounds(pr.inst, rep, 60);
  EXPECT_TRUE(g.pass()) << g.failures.size() << " failures";
  EXPECT_EQ(g.fit_lo, 20u);
  EXPECT_EQ(g.fit_hi, 60u);
  EXPECT_EQ(g.q_rate, Verdict::pass);
  EXPECT_EQ(g.err_rate, Verdict::pass);
  ASSERT_EQ(g.rows.size(), 61u);
  EXPECT_EQ(g.rows[0].q_ok, Verdict::pass);
  EXPECT_TRUE(g.rows[0].q_abs.contains(Rational(1)));
  for (const auto& row : g.rows) {
    EXPECT_EQ(row.q_ok, Verdict::pass) << row.r;
    EXPECT_EQ(row.err_ok, Verdict::pass) << row.r;
    EXPECT_TRUE(row.det_nonzero);
  }
  // The error normalised by h_r D/(g^r N) decreases strictly; the raw error
  // does not, since D/N jumps between consecutive r.
  EXPECT_TRUE(g.monotone_residual);
  EXPECT_FALSE(g.monotone_tail);
}

TEST(Growth, RealInstanceRates) {
  CorollaryInstance ci = cor(101, -1, 5, 3);
  Prepared pr = prepare(ci);
  MeasureReport rep = corollary1(ci);
  ASSERT_TRUE(rep.ok()) << rep.first_failure()->name;
  EXPECT_TRUE(rep.alpha.is_real());
  GrowthReport g = verify_bounds(pr.inst, rep, 60);
  EXPECT_TRUE(g.pass());
  EXPECT_EQ(g.q_rate, Verdict::pass);
  EXPECT_EQ(g.err_rate, Verdict::pass);
  EXPECT_TRUE(g.monotone_residual);
}

TEST(Growth, RejectsTwistedAndFailedInstances) {
  Prepared pr = prepare(cor(100, 1, -3, 3));
  MeasureReport rep = corollary1(cor(100, 1, -3, 3));
  Theorem2Instance twisted = pr.inst;
  twisted.mu = mu_absorb(twisted.field, MuKind::zeta6).mu;
  EXPECT_THROW(verify_bounds(twisted, rep, 10), DomainError);
  MeasureReport bad = corollary1(cor(3, 1, 5, 2));
  Prepared pb = prepare(cor(3, 1, 5, 2));
  EXPECT_THROW(verify_bounds(pb.inst, bad, 10), DomainError);
}

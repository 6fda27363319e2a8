#include "irrmeasure/approxseq.hpp"

#include <algorithm>
#include <cmath>

namespace irrmeasure {

namespace {

TowerElem scale_factor(const Theorem2Instance& inst, const HypPoly& poly, const Integer& d) {
  auto hg = (inst.h_r(poly.r) / inst.g.pow(poly.r)).to_tower();
  if (!hg || !hg->in_base())
    throw InvariantError("build_pq: h_r / g^r is not in K at r = " + std::to_string(poly.r));
  return *hg * ratio(denom_D(poly), numer_N(poly, d));
}

}  // namespace

ApproximantPair build_pq(const Theorem2Instance& inst, const Integer& d, unsigned long r) {
  const HypPoly poly = x_coeffs(inst.m, inst.n, r);
  const TowerElem s = conj(inst.eta);
  ApproximantPair out{r, TowerElem(inst.field), TowerElem(inst.field), inst.h_r(r), scale_factor(inst, poly, d)};
  out.p = out.scale * x_star_eval(poly, inst.eta, s);
  out.q = out.scale * x_star_eval(poly, s, inst.eta);
  out.p_int_cert = is_alg_integer(out.p);
  out.q_int_cert = is_alg_integer(out.q);
  out.conj_cert = out.q == conj(out.p);
  if (!out.p_int_cert || !out.q_int_cert)
    throw InvariantError("build_pq: p_r or q_r is not an algebraic integer at r = " + std::to_string(r));
  if (!out.conj_cert) throw InvariantError("build_pq: q_r != sigma(p_r) at r = " + std::to_string(r));
  return out;
}

ApproximantPair build_pq(const Theorem2Instance& inst, unsigned long r) {
  return build_pq(inst, largest_d(inst.eta, inst.g), r);
}

ApproximantPair build_pq(const CorollaryInstance& inst, unsigned long r) {
  const CorollaryChain ch = corollary_chain(inst);
  return build_pq(to_theorem2(inst, ch), ch.d, r);
}

std::vector<ApproximantPair> build_sequence(const Theorem2Instance& inst, unsigned long r_max) {
  const Integer d = largest_d(inst.eta, inst.g);
  std::vector<ApproximantPair> out;
  out.reserve(r_max + 1);
  for (unsigned long r = 0; r <= r_max; ++r) out.push_back(build_pq(inst, d, r));
  return out;
}

TowerElem determinant(const ApproximantPair& a, const ApproximantPair& b) { return a.p * b.q - b.p * a.q; }

namespace {

Ball theta_of(const Theorem2Instance& inst, Precision prec) {
  return principal_power(embed(inst.eta / conj(inst.eta), prec), inst.m, inst.n);
}

// Slope of the least-squares line through (r, y_r), r in [lo, hi].
Interval ls_slope(const std::vector<Interval>& y, unsigned long lo, unsigned long hi, Precision prec) {
  const Rational mean = Rational(Integer(lo + hi)) / 2;
  Rational sxx = 0;
  for (unsigned long r = lo; r <= hi; ++r) sxx += (Rational(Integer(r)) - mean) * (Rational(Integer(r)) - mean);
  Interval acc(prec);
  for (unsigned long r = lo; r <= hi; ++r) acc += Interval((Rational(Integer(r)) - mean) / sxx, prec) * y[r - lo];
  return acc;
}

Verdict within(const Interval& slope, const Interval& target, Precision prec) {
  return less(abs(slope - target), Interval(Rational(1, 20), prec) * abs(target));
}

GrowthReport bounds_at(const Theorem2Instance& inst, const MeasureReport& rep,
                       const std::vector<ApproximantPair>& seq, Precision prec) {
  GrowthReport out;
  out.precision = prec;
  const unsigned long r_max = seq.size() - 1;
  const Ball theta = theta_of(inst, prec);
  const Interval E = with_precision(rep.E, prec), Q = with_precision(rep.Q, prec);
  const Interval k0 = with_precision(rep.k0, prec), l0 = with_precision(rep.l0, prec);
  out.log_Q = log(Q);
  out.log_E = log(E);
  Interval Qr(1L, prec), Er(1L, prec);
  for (unsigned long r = 0; r <= r_max; ++r) {
    GrowthRow row;
    row.r = r;
    const Ball p = embed(seq[r].p, prec), q = embed(seq[r].q, prec);
    row.q_abs = abs(q);
    row.err_abs = abs(q * theta - p);
    row.residual = row.err_abs / abs(embed(seq[r].scale, prec));
    row.q_bound = k0 * Qr;
    row.err_bound = l0 / Er;
    row.q_ok = less(row.q_abs, row.q_bound);
    row.err_ok = less(row.err_abs, row.err_bound);
    if (r < r_max) row.det_nonzero = !determinant(seq[r], seq[r + 1]).is_zero();
    if (row.q_ok == Verdict::indeterminate || row.err_ok == Verdict::indeterminate)
      throw PrecisionError("verify_bounds: undecided bound at r = " + std::to_string(r));
    if (row.q_ok == Verdict::fail || row.err_ok == Verdict::fail) out.failures.push_back(r);
    if (!row.det_nonzero) out.degenerate.push_back(r);
    out.rows.push_back(std::move(row));
    Qr *= Q;
    Er *= E;
  }
  out.fit_hi = r_max;
  out.fit_lo = r_max / 3;
  if (out.fit_hi > out.fit_lo) {
    std::vector<Interval> lq, le;
    for (unsigned long r = out.fit_lo; r <= out.fit_hi; ++r) {
      const GrowthRow& row = out.rows[r];
      if (row.q_abs.contains_zero() || row.err_abs.contains_zero())
        throw PrecisionError("verify_bounds: zero not excluded in rate fit at r = " + std::to_string(r));
      lq.push_back(log(row.q_abs));
      le.push_back(-log(row.err_abs));
    }
    out.q_slope = ls_slope(lq, out.fit_lo, out.fit_hi, prec);
    out.err_slope = ls_slope(le, out.fit_lo, out.fit_hi, prec);
    out.q_rate = within(out.q_slope, out.log_Q, prec);
    out.err_rate = within(out.err_slope, out.log_E, prec);
    out.monotone_tail = out.monotone_residual = true;
    for (unsigned long r = out.fit_lo; r < out.fit_hi; ++r) {
      if (less(out.rows[r + 1].err_abs, out.rows[r].err_abs) != Verdict::pass) out.monotone_tail = false;
      if (less(out.rows[r + 1].residual, out.rows[r].residual) != Verdict::pass) out.monotone_residual = false;
    }
  }
  return out;
}

}  // namespace

GrowthReport verify_bounds(const Theorem2Instance& inst, const MeasureReport& rep, unsigned long r_max,
                           Precision prec) {
  if (inst.mu) throw DomainError("verify_bounds: absorb the root of unity into eta first");
  if (greater(rep.E, Interval(1L, rep.E.precision())) != Verdict::pass ||
      greater(rep.Q, Interval(1L, rep.Q.precision())) != Verdict::pass)
    throw DomainError("verify_bounds: needs a report with E > 1 and Q > 1");
  const std::vector<ApproximantPair> seq = build_sequence(inst, r_max);
  // |q_r theta - p_r| sits r (log Q + log E) bits below |q_r|.
  const double bits = static_cast<double>(r_max) * (std::log2(rep.Q.upper_d()) + std::log2(rep.E.upper_d()));
  const Precision start = prec + static_cast<Precision>(std::ceil(bits)) + 64;
  return escalate(start, [&](Precision p) { return bounds_at(inst, rep, seq, p); });
}

RemainderCheck remainder_consistency(const Theorem2Instance& inst, const Integer& d, unsigned long r,
                                     Precision prec) {
  const ApproximantPair pair = build_pq(inst, d, r);
  // The difference cancels about 2 log2|q_r| bits.
  const double lq = std::log2(std::max(1.0, abs(embed(pair.q, 64)).upper_d()));
  const Precision work = prec + 2 * static_cast<Precision>(std::ceil(lq)) + 8 * r + 64;
  const TowerElem rho = inst.eta / conj(inst.eta);
  RemainderCheck out;
  out.direct = embed(pair.q, work) * theta_of(inst, work) - embed(pair.p, work);
  out.via_remainder = embed(pair.scale * pow(conj(inst.eta), r), work) *
                      remainder_difference(embed(rho, work), inst.m, inst.n, r, work);
  out.overlap = overlaps(out.direct, out.via_remainder);
  return out;
}

}  // namespace irrmeasure

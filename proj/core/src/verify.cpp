#include "irrmeasure/verify.hpp"

#include <cmath>

namespace irrmeasure {

namespace {

Integer floor_q(const Rational& x) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

Integer ceil_q(const Rational& x) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

void push_convergent(ConvergentList& out, const Integer& a, Integer (&p)[2], Integer (&q)[2]) {
  Integer pn = a * p[1] + p[0], qn = a * q[1] + q[0];
  p[0] = p[1];
  p[1] = pn;
  q[0] = q[1];
  q[1] = qn;
  out.convergents.emplace_back(pn, qn);
}

// Continued fraction of every number in [lo, hi] at once.
ConvergentList expand(Rational lo, Rational hi, std::size_t depth) {
  ConvergentList out;
  Integer p[2] = {0, 1}, q[2] = {1, 0};
  while (out.convergents.size() < depth) {
    const Integer a = floor_q(lo);
    if (floor_q(hi) != a) {
      out.truncated = true;
      out.reason = "partial quotient " + std::to_string(out.convergents.size()) + " not determined by the enclosure";
      return out;
    }
    push_convergent(out, a, p, q);
    const Rational flo = lo - Rational(a), fhi = hi - Rational(a);
    if (flo == 0 && fhi == 0) {
      out.exact = true;
      return out;
    }
    if (flo == 0) {
      out.truncated = true;
      out.reason = "enclosure touches the convergent " + out.convergents.back().first.get_str() + "/" +
                   out.convergents.back().second.get_str();
      return out;
    }
    lo = 1 / fhi;
    hi = 1 / flo;
  }
  return out;
}

void record(ScanResult& res, const Interval& margin, const BaseElem& q, const BaseElem& p, bool& first,
            double& worst_mid) {
  const Verdict v = greater(margin, Interval(1L, margin.precision()));
  if (v == Verdict::fail) res.verdict = Verdict::fail;
  if (v == Verdict::indeterminate) {
    if (res.verdict == Verdict::pass) res.verdict = Verdict::indeterminate;
    if (res.undecided.size() < 16) res.undecided.push_back(q);
  }
  const double mid = margin.mid_d();
  if (first || mid < worst_mid) {
    res.worst_q = q;
    res.worst_p = p;
    worst_mid = mid;
  }
  res.worst_margin = first ? margin : min(res.worst_margin, margin);
  first = false;
}

}  // namespace

ConvergentList convergents(const Ball& alpha, std::size_t depth) {
  if (!alpha.im().contains_zero()) throw DomainError("convergents: alpha is not real");
  return expand(alpha.re().lower_q(), alpha.re().upper_q(), depth);
}

ConvergentList convergents(const Rational& alpha, std::size_t depth) { return expand(alpha, alpha, depth); }

Precision scan_precision(const Interval& kappa, const Integer& q_max) {
  const double bits = (kappa.upper_d() + 2.0) * std::log2(std::max(2.0, q_max.get_d()));
  return static_cast<Precision>(std::ceil(bits)) + 64;
}

ScanResult scan_real(const Ball& alpha, const Interval& c, const Interval& kappa, const Integer& q_max) {
  if (!alpha.im().contains_zero()) throw DomainError("scan_real: alpha is not real");
  if (!c.positive()) throw DomainError("scan_real: c must be positive");
  if (!kappa.positive()) throw DomainError("scan_real: kappa must be positive");
  if (q_max < 1) throw DomainError("scan_real: q_max must be at least 1");
  const Precision prec = alpha.precision();
  const BaseField Q;
  const Interval& a = alpha.re();
  const Rational lo = a.lower_q(), hi = a.upper_q();
  ScanResult res;
  res.q_max = q_max;
  res.verdict = Verdict::pass;
  bool first = true;
  double worst_mid = 0;
  for (Integer q = 1; q <= q_max; ++q) {
    const Interval qi(q, prec);
    const Interval weight = c * exp(kappa * log(qi));
    const Interval qa = qi * a;
    for (Integer p = floor_q(lo * Rational(q)); p <= ceil_q(hi * Rational(q)); ++p) {
      const Interval margin = abs(qa - Interval(p, prec)) * weight;
      record(res, margin, BaseElem::rational(Q, Rational(q)), BaseElem::rational(Q, Rational(p)), first, worst_mid);
      ++res.scanned;
    }
  }
  return res;
}

BaseElem omega(const BaseField& field) {
  if (field.is_rational()) throw DomainError("omega: need an imaginary quadratic field");
  const Integer D = -field.disc();
  if (mod(D, 4) == 3) return BaseElem(field, Rational(1, 2), Rational(1, 2));
  return BaseElem(field, 0, 1);
}

std::vector<std::pair<Integer, Integer>> lattice_points(const Integer& D, const Integer& q_max) {
  const BaseField K = BaseField::imaginary(D);
  const BaseElem w = omega(K);
  const Integer tr(w.trace()), nm(w.norm());
  const Integer bound = q_max * q_max;
  // Im(omega) >= sqrt(3)/2 and |Re(omega)| <= 1/2, so |a|, |b| <= 2 q_max.
  std::vector<std::pair<Integer, Integer>> out;
  const Integer reach = 2 * q_max + 1;
  for (Integer b = -reach; b <= reach; ++b)
    for (Integer a = -reach; a <= reach; ++a) {
      if (a == 0 && b == 0) continue;
      if (a * a + a * b * tr + b * b * nm <= bound) out.emplace_back(a, b);
    }
  return out;
}

ScanResult scan_imquad(const Ball& alpha, const Interval& c, const Interval& kappa, const Integer& q_max,
                       const Integer& D, bool real_only) {
  if (!c.positive()) throw DomainError("scan_imquad: c must be positive");
  if (!kappa.positive()) throw DomainError("scan_imquad: kappa must be positive");
  const Precision prec = alpha.precision();
  const BaseField K = BaseField::imaginary(D);
  const BaseElem w = omega(K);
  const Ball wb = w.embed(prec);
  const Interval w_re = wb.re(), w_im = wb.im();
  ScanResult res;
  res.q_max = q_max;
  res.verdict = Verdict::pass;
  bool first = true;
  double worst_mid = 0;
  for (const auto& [qa, qb] : lattice_points(D, q_max)) {
    if (real_only && qb != 0) continue;
    const BaseElem q = BaseElem::rational(K, Rational(qa)) + w * Rational(qb);
    const Ball qz = q.embed(prec);
    const Ball z = qz * alpha;
    const Interval weight = c * exp(kappa * log(abs(qz)));
    // p = x + y omega nearest to z lies within one step of the cell containing z.
    Integer y_lo = 0, y_hi = 0;
    if (!real_only) {
      const Interval y = z.im() / w_im;
      y_lo = floor_q(y.lower_q()) - 1;
      y_hi = ceil_q(y.upper_q()) + 1;
    }
    for (Integer y = y_lo; y <= y_hi; ++y) {
      const Interval x = z.re() - Interval(y, prec) * w_re;
      for (Integer xx = floor_q(x.lower_q()) - 1; xx <= ceil_q(x.upper_q()) + 1; ++xx) {
        const BaseElem p = BaseElem::rational(K, Rational(xx)) + w * Rational(y);
        const Interval margin = abs(z - p.embed(prec)) * weight;
        record(res, margin, q, p, first, worst_mid);
        ++res.scanned;
      }
    }
  }
  return res;
}

}  // namespace irrmeasure

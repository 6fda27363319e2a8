#include "irrmeasure/hyperg.hpp"

#include <algorithm>
#include <cmath>

#include "irrmeasure/quadrature.hpp"

namespace irrmeasure {

namespace {

Rational nu_of(unsigned long m, unsigned long n) {
  Rational nu(static_cast<long>(m), static_cast<long>(n));
  nu.canonicalize();
  return nu;
}

bool meets_cut(const Ball& z) {
  return z.im().contains_zero() && mpfr_sgn(z.re().lower()) <= 0;
}

}  // namespace

Rational HypPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void require_exponent(unsigned long m, unsigned long n) {
  if (!(0 < m && m < n) || gcd(Integer(m), Integer(n)) != 1)
    throw DomainError("need 0 < m < n with gcd(m, n) = 1, got m=" + std::to_string(m) + " n=" + std::to_string(n));
}

HypPoly x_coeffs(unsigned long m, unsigned long n, unsigned long r) {
  require_exponent(m, n);
  const Rational nu = nu_of(m, n);
  HypPoly p{m, n, r, {}};
  p.coeffs.reserve(r + 1);
  Rational c = 1;
  p.coeffs.push_back(c);
  const Rational rr{Integer(r)};
  for (unsigned long k = 0; k < r; ++k) {
    const Rational kk{Integer(k)};
    c *= (kk - rr) * (kk - rr - nu) / ((1 - nu + kk) * (kk + 1));
    p.coeffs.push_back(c);
  }
  return p;
}

TowerElem x_star_eval(const HypPoly& p, const TowerElem& x, const TowerElem& y) {
  const FieldPtr& f = x.field();
  std::vector<TowerElem> ypow;
  ypow.reserve(p.r + 1);
  ypow.push_back(TowerElem::from_rational(f, 1));
  for (unsigned long k = 0; k < p.r; ++k) ypow.push_back(ypow.back() * y);
  TowerElem acc(f), xpow = TowerElem::from_rational(f, 1);
  for (unsigned long k = 0; k <= p.r; ++k) {
    if (p.coeffs[k] != 0) acc += xpow * ypow[p.r - k] * p.coeffs[k];
    if (k < p.r) xpow *= x;
  }
  return acc;
}

Rational x_star_eval(const HypPoly& p, const Rational& x, const Rational& y) {
  Rational acc = 0, xpow = 1;
  std::vector<Rational> ypow(p.r + 1, Rational(1));
  for (unsigned long k = 1; k <= p.r; ++k) ypow[k] = ypow[k - 1] * y;
  for (unsigned long k = 0; k <= p.r; ++k) {
    acc += p.coeffs[k] * xpow * ypow[p.r - k];
    xpow *= x;
  }
  return acc;
}

Integer denom_D(const HypPoly& p) {
  Integer D = 1;
  for (const auto& c : p.coeffs) D = lcm(D, Integer(c.get_den()));
  return D;
}

Integer denom_D(unsigned long m, unsigned long n, unsigned long r) { return denom_D(x_coeffs(m, n, r)); }

namespace {

// Integer coefficients of D X(1 + y), by an in-place Taylor shift.
std::vector<Integer> shifted_integral(const HypPoly& p, const Integer& D) {
  std::vector<Integer> a;
  a.reserve(p.coeffs.size());
  for (const auto& c : p.coeffs) a.push_back(Integer(c * D));
  const std::size_t deg = a.size() - 1;
  for (std::size_t i = 0; i < deg; ++i)
    for (std::size_t j = deg; j-- > i;) a[j] += a[j + 1];
  return a;
}

}  // namespace

std::vector<Rational> shifted_coeffs(const HypPoly& p, const Integer& d) {
  if (d < 1) throw DomainError("shifted_coeffs: d must be positive");
  const Integer D = denom_D(p);
  std::vector<Integer> a = shifted_integral(p, D);
  std::vector<Rational> out;
  out.reserve(a.size());
  Integer dp = 1;
  for (std::size_t j = 0; j < a.size(); ++j) {
    Rational c(a[j] * dp, D);
    if (j % 2 == 1) c = -c;
    c.canonicalize();
    out.push_back(c);
    dp *= d;
  }
  return out;
}

Integer numer_N(const HypPoly& p, const Integer& d) {
  if (d < 1) throw DomainError("numer_N: d must be positive");
  const Integer D = denom_D(p);
  std::vector<Integer> a = shifted_integral(p, D);
  Integer g = 0, dp = 1;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] != 0) {
      Integer v = abs(a[j]) * dp;
      g = gcd(g, Integer(v / gcd(v, D)));
    }
    dp *= d;
  }
  return g;
}

Integer numer_N(unsigned long m, unsigned long n, const Integer& d, unsigned long r) {
  return numer_N(x_coeffs(m, n, r), d);
}

InvariantPair invariants(unsigned long m, unsigned long n, const Integer& d, unsigned long r) {
  HypPoly p = x_coeffs(m, n, r);
  return {denom_D(p), numer_N(p, d), d};
}

namespace {

Interval prime_power(const Integer& p, const Rational& e, Precision prec) {
  if (is_integer(e)) {
    if (e >= 0) return Interval(pow(p, Integer(e.get_num()).get_ui()), prec);
    return Interval(Rational(1) / Rational(pow(p, Integer(-e.get_num()).get_ui())), prec);
  }
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), e.get_num_mpz_t(), e.get_den_mpz_t());
  Rational frac = e - Rational(fl);
  Interval base = prime_power(p, Rational(fl), prec);
  return base * exp(Interval(frac, prec) * log(Interval(p, prec)));
}

}  // namespace

Interval ValuationProduct::value(Precision prec) const { return power(1, prec); }

Interval ValuationProduct::power(unsigned long r, Precision prec) const {
  Interval v(1L, prec);
  for (const auto& f : factors) v *= prime_power(f.prime, f.exponent * Rational(Integer(r)), prec);
  return v;
}

std::optional<Integer> ValuationProduct::exact() const {
  Integer v = 1;
  for (const auto& f : factors) {
    if (!is_integer(f.exponent) || f.exponent < 0) return std::nullopt;
    v *= pow(f.prime, Integer(f.exponent.get_num()).get_ui());
  }
  return v;
}

std::string ValuationProduct::to_string() const {
  std::string s;
  for (const auto& f : factors) {
    if (f.exponent == 0) continue;
    if (!s.empty()) s += "*";
    s += f.prime.get_str();
    if (f.exponent != 1) s += "^(" + irrmeasure::to_string(f.exponent) + ")";
  }
  return s.empty() ? "1" : s;
}

ValuationProduct cal_N(const Integer& d, unsigned long n) {
  if (d < 1 || n < 1) throw DomainError("cal_N: d and n must be positive");
  ValuationProduct out;
  if (n == 1) return out;
  for (const auto& pp : factor(Integer(n))) {
    Rational cap = Rational(static_cast<long>(pp.exponent)) + Rational(Integer(1), pp.prime - 1);
    Rational vd(val_p(pp.prime, d));
    out.factors.push_back({pp.prime, std::min(vd, cap)});
  }
  return out;
}

GammaRatios gamma_ratio_bounds(unsigned long m, unsigned long n, unsigned long r) {
  require_exponent(m, n);
  const Rational nu = nu_of(m, n);
  GammaRatios g{1, 1};
  for (unsigned long j = 1; j <= r; ++j) {
    const Rational jj{Integer(j)};
    g.lower *= jj / (jj - nu);
    g.upper *= (jj + nu) / jj;
  }
  return g;
}

Rational cd_left_side(unsigned long m, unsigned long n, const Integer& d, unsigned long r) {
  GammaRatios g = gamma_ratio_bounds(m, n, r);
  InvariantPair inv = invariants(m, n, d, r);
  Rational top = std::max({Rational(1), g.lower, g.upper});
  Rational ratio(inv.D, inv.N);
  ratio.canonicalize();
  return top * ratio;
}

std::vector<Rational> cd_left_sides(unsigned long m, unsigned long n, const Integer& d, unsigned long r_max) {
  require_exponent(m, n);
  const Rational nu = nu_of(m, n);
  std::vector<Rational> out;
  out.reserve(r_max + 1);
  Rational lower = 1, upper = 1;
  for (unsigned long r = 0; r <= r_max; ++r) {
    if (r > 0) {
      const Rational rr{Integer(r)};
      lower *= rr / (rr - nu);
      upper *= (rr + nu) / rr;
    }
    HypPoly p = x_coeffs(m, n, r);
    Rational top = std::max({Rational(1), lower, upper});
    Rational ratio(denom_D(p), numer_N(p, d));
    ratio.canonicalize();
    out.push_back(top * ratio);
  }
  return out;
}

BoundReport check_CD_bound(unsigned long m, unsigned long n, const Integer& d, const Interval& C,
                           const Interval& D, unsigned long r_max, Precision prec, Precision max_prec) {
  if (!C.positive() || !D.positive()) throw DomainError("check_CD_bound: C and D must be positive");
  BoundReport rep;
  rep.m = m;
  rep.n = n;
  rep.d = d;
  const ValuationProduct calN = cal_N(d, n);
  const std::vector<Rational> lhs = cd_left_sides(m, n, d, r_max);
  for (unsigned long r = 0; r <= r_max; ++r) {
    BoundRow row{r, lhs[r], Interval(prec), Verdict::indeterminate};
    for (Precision p = prec; p <= max_prec; p *= 2) {
      Interval rhs = with_precision(C, p) * pow(with_precision(D, p), r) / calN.power(r, p);
      row.rhs = rhs;
      row.verdict = less(Interval(lhs[r], p), rhs);
      if (row.verdict != Verdict::indeterminate) break;
    }
    if (row.verdict == Verdict::fail) rep.failures.push_back(r);
    if (row.verdict == Verdict::indeterminate) rep.indeterminate.push_back(r);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

Calibration calibrate_CD(unsigned long m, unsigned long n, const Integer& d, unsigned long r_max,
                         const Rational& margin, Precision prec) {
  if (r_max < 10) throw DomainError("calibrate_CD: r_max must be at least 10");
  if (margin < 0) throw DomainError("calibrate_CD: margin must be nonnegative");
  const ValuationProduct calN = cal_N(d, n);
  const std::vector<Rational> lhs = cd_left_sides(m, n, d, r_max);
  const unsigned long r_lo = r_max >= 20 ? 20 : r_max / 2;

  Rational rate = 0;
  for (unsigned long r = r_lo; r <= r_max; ++r) {
    Interval v = exp(log(Interval(lhs[r], prec) * calN.power(r, prec)) / Interval(long(r), prec));
    rate = std::max(rate, v.upper_q());
  }
  // Round up to a short dyadic so reports stay readable.
  Rational Dq = Interval(Rational(rate * (1 + margin)), 64).upper_q();
  Interval D = Interval::from_bounds(Dq, Dq, prec);

  Rational worst = 0;
  for (unsigned long r = 0; r <= r_max; ++r) {
    Interval v = Interval(lhs[r], prec) * calN.power(r, prec) / pow(D, r);
    worst = std::max(worst, v.upper_q());
  }
  Rational Cq = Interval(Rational(worst * (1 + Rational(1, 1UL << 32))), 64).upper_q();
  return {Interval::from_bounds(Cq, Cq, prec), D, r_max, margin, true};
}

Ball remainder_difference(const Ball& z, unsigned long m, unsigned long n, unsigned long r, Precision prec) {
  require_exponent(m, n);
  if (meets_cut(z)) throw DomainError("remainder_difference: z meets the branch cut (-inf, 0]");
  const HypPoly p = x_coeffs(m, n, r);
  const Precision work = prec + 32 + 4 * static_cast<Precision>(r);
  Ball zw = with_precision(z, work);
  Ball reversed(work), direct(work);
  for (unsigned long k = 0; k <= r; ++k)
    reversed = reversed * zw + Ball(Interval(p.coeffs[k], work));
  for (unsigned long k = r + 1; k-- > 0;)
    direct = direct * zw + Ball(Interval(p.coeffs[k], work));
  Ball result = principal_power(zw, m, n) * reversed - direct;
  return with_precision(result, prec);
}

Ball remainder_integral(const Ball& z, unsigned long m, unsigned long n, unsigned long r, Precision prec) {
  require_exponent(m, n);
  if (meets_cut(z)) throw DomainError("remainder_integral: path from 1 to z meets the branch cut");
  const Precision work = prec + 32;
  Ball zw = with_precision(z, work);
  Ball zm1 = zw - Ball(Interval(1L, work));
  if (zm1.re().is_exact_zero() && zm1.im().is_exact_zero()) return Ball(prec);
  const Rational nu = nu_of(m, n);
  const Rational e = nu - Rational(Integer(r)) - 1;
  // t = 1 + s (z - 1) maps [0, 1] onto the segment; (1-t)^r (t-z)^r dt = (z-1)^{2r+1} (s(1-s))^r ds.
  BoxFunction f = [&](const Ball& s) {
    Ball sw = with_precision(s, work);
    Ball base = sw * (Ball(Interval(1L, work)) - sw);
    Ball t = Ball(Interval(1L, work)) + sw * zm1;
    return pow(base, r) * principal_rpow(t, e);
  };
  Ball integral = integrate(f, 0, 1, work);
  Rational prefactor = nu * gamma_ratio_bounds(m, n, r).upper;
  Ball result = integral * pow(zm1, 2 * r + 1) * Interval(prefactor, work);
  return with_precision(result, prec);
}

}  // namespace irrmeasure

#include "irrmeasure/quadrature.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace irrmeasure {

namespace {

Rational to_rational(mpfr_srcptr x) {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

// (P_{n-1}(x), P_n(x)) by the three-term recurrence, n >= 1.
std::pair<Interval, Interval> legendre(const Interval& x, unsigned n) {
  const Precision p = x.precision();
  Interval prev(1L, p);
  Interval cur = x;
  for (unsigned k = 1; k < n; ++k) {
    Interval next = (Interval(long(2 * k + 1), p) * x * cur - Interval(long(k), p) * prev) / Interval(long(k + 1), p);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {prev, cur};
}

// Newton iteration for the i-th largest root of P_n, in plain rounded arithmetic.
Rational newton_root(unsigned n, unsigned i, Precision work) {
  detail::Real x(work), p0(work), p1(work), p2(work), dp(work), t(work), step(work);
  mpfr_set_d(x.get(), std::cos(M_PI * (i + 0.75) / (n + 0.5)), MPFR_RNDN);
  for (int iter = 0; iter < 200; ++iter) {
    mpfr_set_ui(p0.get(), 1, MPFR_RNDN);
    mpfr_set(p1.get(), x.get(), MPFR_RNDN);
    for (unsigned k = 1; k < n; ++k) {
      // p2 = ((2k+1) x p1 - k p0) / (k+1)
      mpfr_mul(t.get(), x.get(), p1.get(), MPFR_RNDN);
      mpfr_mul_ui(t.get(), t.get(), 2 * k + 1, MPFR_RNDN);
      mpfr_mul_ui(p2.get(), p0.get(), k, MPFR_RNDN);
      mpfr_sub(p2.get(), t.get(), p2.get(), MPFR_RNDN);
      mpfr_div_ui(p2.get(), p2.get(), k + 1, MPFR_RNDN);
      mpfr_swap(p0.get(), p1.get());
      mpfr_swap(p1.get(), p2.get());
    }
    // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)
    mpfr_mul(dp.get(), x.get(), p1.get(), MPFR_RNDN);
    mpfr_sub(dp.get(), dp.get(), p0.get(), MPFR_RNDN);
    mpfr_mul_ui(dp.get(), dp.get(), n, MPFR_RNDN);
    mpfr_sqr(t.get(), x.get(), MPFR_RNDN);
    mpfr_sub_ui(t.get(), t.get(), 1, MPFR_RNDN);
    mpfr_div(dp.get(), dp.get(), t.get(), MPFR_RNDN);
    mpfr_div(step.get(), p1.get(), dp.get(), MPFR_RNDN);
    mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
    if (mpfr_zero_p(step.get()) || mpfr_get_exp(step.get()) < mpfr_get_exp(x.get()) - work + 4) break;
  }
  return to_rational(x.get());
}

double log_q(const Rational& q) {
  long e1 = 0, e2 = 0;
  double a = mpz_get_d_2exp(&e1, q.get_num_mpz_t());
  double b = mpz_get_d_2exp(&e2, q.get_den_mpz_t());
  return std::log(a / b) + static_cast<double>(e1 - e2) * M_LN2;
}

int sign_of(const Interval& v) {
  if (v.positive()) return 1;
  if (v.negative()) return -1;
  return 0;
}

}  // namespace

GaussRule gauss_legendre(unsigned n, Precision prec) {
  if (n == 0) throw DomainError("gauss_legendre: need at least one node");
  // Interval Legendre recurrences widen by about (1+sqrt 2) per step.
  const Precision growth = 2 * static_cast<Precision>(n);
  const Precision work = prec + 2 * growth + 32;
  const Rational eps = Rational(1) / pow(Integer(2), static_cast<unsigned long>(prec + growth));
  GaussRule rule;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  Rational previous_lo = 2;
  for (unsigned i = 0; i < n; ++i) {
    Rational x = newton_root(n, i, work);
    Rational lo = x - eps, hi = x + eps;
    int s_lo = sign_of(legendre(Interval(lo, work), n).second);
    int s_hi = sign_of(legendre(Interval(hi, work), n).second);
    if (s_lo == 0 || s_hi == 0 || s_lo == s_hi || hi >= previous_lo)
      throw PrecisionError("gauss_legendre: could not isolate node " + std::to_string(i));
    previous_lo = lo;
    Interval node = Interval::from_bounds(lo, hi, work);
    Interval pn1 = legendre(node, n).first;
    Interval w = Interval(2L, work) * (Interval(1L, work) - sqr(node)) /
                 (Interval(long(n) * long(n), work) * sqr(pn1));
    rule.nodes.push_back(with_precision(node, prec));
    rule.weights.push_back(with_precision(w, prec));
  }
  return rule;
}

namespace {

struct Integrator {
  const BoxFunction& f;
  Precision prec;
  const QuadratureOptions& opts;
  std::map<unsigned, GaussRule> rules;

  const GaussRule& rule(unsigned n) {
    auto it = rules.find(n);
    if (it == rules.end()) it = rules.emplace(n, gauss_legendre(n, prec + 16)).first;
    return it->second;
  }

  Ball segment(const Rational& a, const Rational& b, const Rational& tol, unsigned depth) {
    const Rational c = (a + b) / 2, h = (b - a) / 2;
    static const Rational rhos[] = {Rational(8), Rational(6), Rational(4), Rational(3),
                                    Rational(2), Rational(3, 2), Rational(5, 4)};
    const double log_tol = log_q(tol);
    unsigned best_n = 0;
    Rational best_rho;
    Interval best_m(prec);
    for (const Rational& rho : rhos) {
      Rational A = (rho + 1 / rho) / 2, B = (rho - 1 / rho) / 2;
      Ball box(Interval::from_bounds(c - h * A, c + h * A, prec), Interval::from_bounds(-h * B, h * B, prec));
      Interval M(prec);
      try {
        M = abs(f(box));
      } catch (const PrecisionError&) {
        continue;
      } catch (const DomainError&) {
        continue;
      }
      if (!mpfr_number_p(M.upper())) continue;
      Rational m_up = M.upper_q();
      if (m_up <= 0) m_up = tol;
      double lr = std::log(rho.get_d());
      double num = log_q(64 * m_up * h / (15 * (rho * rho - 1)));
      double need = (num - log_tol) / (2.0 * lr);
      unsigned n = need < 8 ? 8 : static_cast<unsigned>(std::ceil(need / 8.0)) * 8;
      if (best_n == 0 || n < best_n) {
        best_n = n;
        best_rho = rho;
        best_m = M;
      }
    }
    if (best_n == 0 || best_n > opts.max_nodes) {
      if (depth >= opts.max_depth) throw PrecisionError("integrate: subdivision limit reached");
      return segment(a, c, tol / 2, depth + 1) + segment(c, b, tol / 2, depth + 1);
    }
    const unsigned n = best_n;
    const GaussRule& g = rule(n);
    Interval hi(h, prec), ci(c, prec);
    Ball sum(prec);
    for (unsigned i = 0; i < n; ++i) {
      Interval s = ci + hi * g.nodes[i];
      sum += f(Ball(s)) * g.weights[i];
    }
    sum *= hi;
    Interval rho(best_rho, prec);
    Interval err = Interval(64L, prec) * best_m * hi /
                   (Interval(15L, prec) * (sqr(rho) - Interval(1L, prec)) * pow(rho, 2UL * n));
    Interval pad = Interval::hull(-err, err);
    return sum + Ball(pad, pad);
  }
};

}  // namespace

Ball integrate(const BoxFunction& f, const Rational& a, const Rational& b, Precision prec,
               const QuadratureOptions& opts) {
  if (a == b) return Ball(prec);
  if (a > b) return -integrate(f, b, a, prec, opts);
  const long bits = opts.tol_bits > 0 ? opts.tol_bits : static_cast<long>(prec) - 32;
  Ball mid_value = f(Ball(Interval((a + b) / 2, prec)));
  Rational scale = abs(mid_value).upper_q();
  if (scale == 0) scale = 1;
  Rational tol = scale * (b - a) / pow(Integer(2), static_cast<unsigned long>(bits));
  Integrator run{f, prec, opts, {}};
  return run.segment(a, b, tol, 0);
}

}  // namespace irrmeasure

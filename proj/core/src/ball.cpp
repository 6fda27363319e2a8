#include "irrmeasure/ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace irrmeasure {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

namespace detail {

Real::Real(Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

}  // namespace detail

using detail::Real;

class IntervalAccess {
public:
  static mpfr_ptr lo(Interval& x) { return x.lo_.get(); }
  static mpfr_ptr hi(Interval& x) { return x.hi_.get(); }
};

namespace {

mpfr_ptr lo_of(Interval& x) { return IntervalAccess::lo(x); }
mpfr_ptr hi_of(Interval& x) { return IntervalAccess::hi(x); }

// Signed zeros confuse atan2 and comparisons; canonicalise to +0.
void unsign_zero(mpfr_ptr v) {
  if (mpfr_zero_p(v)) mpfr_set_zero(v, 1);
}

void check_nan(const Interval& x, const char* where) {
  if (mpfr_nan_p(x.lower()) || mpfr_nan_p(x.upper()))
    throw PrecisionError(std::string(where) + ": enclosure is undefined");
}

// Applies a monotone increasing MPFR function endpoint-wise.
template <class F>
Interval monotone_up(const Interval& x, F f) {
  Interval r(x.precision());
  f(lo_of(r), x.lower(), MPFR_RNDD);
  f(hi_of(r), x.upper(), MPFR_RNDU);
  unsign_zero(lo_of(r));
  unsign_zero(hi_of(r));
  return r;
}

}  // namespace

Interval::Interval(Precision prec) : prec_(prec), lo_(prec), hi_(prec) {}

Interval::Interval(long value, Precision prec) : Interval(prec) {
  mpfr_set_si(lo_.get(), value, MPFR_RNDD);
  mpfr_set_si(hi_.get(), value, MPFR_RNDU);
}

Interval::Interval(const Integer& value, Precision prec) : Interval(prec) {
  mpfr_set_z(lo_.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_.get(), value.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& value, Precision prec) : Interval(prec) {
  mpfr_set_q(lo_.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_.get(), value.get_mpq_t(), MPFR_RNDU);
  unsign_zero(lo_.get());
  unsign_zero(hi_.get());
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_min(r.lo_.get(), a.lower(), b.lower(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.upper(), b.upper(), MPFR_RNDU);
  return r;
}

Interval Interval::from_bounds(const Rational& lo, const Rational& hi, Precision prec) {
  if (lo > hi) throw DomainError("Interval::from_bounds: lo > hi");
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
  unsign_zero(r.lo_.get());
  unsign_zero(r.hi_.get());
  return r;
}

Interval Interval::pi(Precision prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
  return r;
}

double Interval::lower_d() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
double Interval::upper_d() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }

double Interval::mid_d() const {
  Real m = mid();
  return mpfr_get_d(m.get(), MPFR_RNDN);
}

Rational Interval::lower_q() const {
  if (!mpfr_number_p(lo_.get())) throw PrecisionError("Interval: non-finite endpoint");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), lo_.get());
  return q;
}

Rational Interval::upper_q() const {
  if (!mpfr_number_p(hi_.get())) throw PrecisionError("Interval: non-finite endpoint");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), hi_.get());
  return q;
}

Real Interval::mid() const {
  Real m(prec_ + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  Real out(prec_);
  mpfr_set(out.get(), m.get(), MPFR_RNDN);
  return out;
}

Real Interval::radius() const {
  Real m = mid();
  Real a(prec_), b(prec_);
  mpfr_sub(a.get(), hi_.get(), m.get(), MPFR_RNDU);
  mpfr_sub(b.get(), m.get(), lo_.get(), MPFR_RNDU);
  mpfr_max(a.get(), a.get(), b.get(), MPFR_RNDU);
  return a;
}

bool Interval::is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }
bool Interval::is_exact_zero() const { return mpfr_zero_p(lo_.get()) && mpfr_zero_p(hi_.get()); }

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool Interval::contains(const Interval& other) const {
  return mpfr_lessequal_p(lo_.get(), other.lower()) && mpfr_greaterequal_p(hi_.get(), other.upper());
}

bool Interval::contains(const Rational& x) const {
  return mpfr_cmp_q(lo_.get(), x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), x.get_mpq_t()) >= 0;
}

bool Interval::positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool Interval::negative() const { return mpfr_sgn(hi_.get()) < 0; }

Interval Interval::operator-() const {
  Interval r(prec_);
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  unsign_zero(r.lo_.get());
  unsign_zero(r.hi_.get());
  return r;
}

Interval& Interval::operator+=(const Interval& b) {
  prec_ = std::max(prec_, b.prec_);
  Real lo(prec_), hi(prec_);
  mpfr_add(lo.get(), lo_.get(), b.lower(), MPFR_RNDD);
  mpfr_add(hi.get(), hi_.get(), b.upper(), MPFR_RNDU);
  unsign_zero(lo.get());
  unsign_zero(hi.get());
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  check_nan(*this, "add");
  return *this;
}

Interval& Interval::operator-=(const Interval& b) {
  prec_ = std::max(prec_, b.prec_);
  Real lo(prec_), hi(prec_);
  mpfr_sub(lo.get(), lo_.get(), b.upper(), MPFR_RNDD);
  mpfr_sub(hi.get(), hi_.get(), b.lower(), MPFR_RNDU);
  unsign_zero(lo.get());
  unsign_zero(hi.get());
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  check_nan(*this, "sub");
  return *this;
}

Interval& Interval::operator*=(const Interval& b) {
  prec_ = std::max(prec_, b.prec_);
  Real lo(prec_), hi(prec_), t(prec_);
  mpfr_srcptr xs[2] = {lo_.get(), hi_.get()};
  mpfr_srcptr ys[2] = {b.lower(), b.upper()};
  mpfr_set_inf(lo.get(), 1);
  mpfr_set_inf(hi.get(), -1);
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    }
  }
  unsign_zero(lo.get());
  unsign_zero(hi.get());
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  check_nan(*this, "mul");
  return *this;
}

Interval& Interval::operator/=(const Interval& b) {
  if (b.is_exact_zero()) throw DomainError("Interval: division by zero");
  if (b.contains_zero()) throw PrecisionError("Interval: divisor enclosure contains zero");
  prec_ = std::max(prec_, b.prec_);
  Real lo(prec_), hi(prec_), t(prec_);
  mpfr_srcptr xs[2] = {lo_.get(), hi_.get()};
  mpfr_srcptr ys[2] = {b.lower(), b.upper()};
  mpfr_set_inf(lo.get(), 1);
  mpfr_set_inf(hi.get(), -1);
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    }
  }
  unsign_zero(lo.get());
  unsign_zero(hi.get());
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  check_nan(*this, "div");
  return *this;
}

Interval sqr(const Interval& x) { return pow(x, 2); }

Interval pow(const Interval& x, unsigned long k) {
  if (k == 0) return Interval(1L, x.precision());
  Interval r(x.precision());
  const bool odd = k % 2 == 1;
  if (odd || mpfr_sgn(x.lower()) >= 0) {
    mpfr_pow_ui(lo_of(r), x.lower(), k, MPFR_RNDD);
    mpfr_pow_ui(hi_of(r), x.upper(), k, MPFR_RNDU);
  } else if (mpfr_sgn(x.upper()) <= 0) {
    mpfr_pow_ui(lo_of(r), x.upper(), k, MPFR_RNDD);
    mpfr_pow_ui(hi_of(r), x.lower(), k, MPFR_RNDU);
  } else {
    Real a(x.precision()), b(x.precision());
    mpfr_pow_ui(a.get(), x.lower(), k, MPFR_RNDU);
    mpfr_pow_ui(b.get(), x.upper(), k, MPFR_RNDU);
    mpfr_set_zero(lo_of(r), 1);
    mpfr_max(hi_of(r), a.get(), b.get(), MPFR_RNDU);
  }
  unsign_zero(lo_of(r));
  unsign_zero(hi_of(r));
  return r;
}

Interval pow(const Interval& x, const Interval& e) { return exp(e * log(x)); }

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.upper()) < 0) throw DomainError("sqrt: negative argument");
  if (mpfr_sgn(x.lower()) < 0) throw PrecisionError("sqrt: enclosure extends below zero");
  return monotone_up(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_sqrt(r, a, rnd); });
}

Interval exp(const Interval& x) {
  return monotone_up(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_exp(r, a, rnd); });
}

Interval log(const Interval& x) {
  if (mpfr_sgn(x.upper()) <= 0) throw DomainError("log: nonpositive argument");
  if (mpfr_sgn(x.lower()) <= 0) throw PrecisionError("log: enclosure reaches zero");
  return monotone_up(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_log(r, a, rnd); });
}

namespace {

// f(x) for |f'| <= 1 and |f| <= 1: f(c) widened by the distance to the ends.
template <class F>
Interval lipschitz_unit(const Interval& x, F f) {
  const Precision prec = x.precision();
  Real c = x.mid();
  if (mpfr_less_p(c.get(), x.lower())) mpfr_set(c.get(), x.lower(), MPFR_RNDN);
  if (mpfr_greater_p(c.get(), x.upper())) mpfr_set(c.get(), x.upper(), MPFR_RNDN);
  Real w(prec), t(prec);
  mpfr_sub(w.get(), x.upper(), c.get(), MPFR_RNDU);
  mpfr_sub(t.get(), c.get(), x.lower(), MPFR_RNDU);
  mpfr_max(w.get(), w.get(), t.get(), MPFR_RNDU);
  Interval r(prec);
  f(lo_of(r), c.get(), MPFR_RNDD);
  f(hi_of(r), c.get(), MPFR_RNDU);
  mpfr_sub(lo_of(r), lo_of(r), w.get(), MPFR_RNDD);
  mpfr_add(hi_of(r), hi_of(r), w.get(), MPFR_RNDU);
  if (mpfr_cmp_si(lo_of(r), -1) < 0) mpfr_set_si(lo_of(r), -1, MPFR_RNDD);
  if (mpfr_cmp_si(hi_of(r), 1) > 0) mpfr_set_si(hi_of(r), 1, MPFR_RNDU);
  unsign_zero(lo_of(r));
  unsign_zero(hi_of(r));
  return r;
}

}  // namespace

Interval sin(const Interval& x) {
  return lipschitz_unit(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_sin(r, a, rnd); });
}

Interval cos(const Interval& x) {
  return lipschitz_unit(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_cos(r, a, rnd); });
}

Interval abs(const Interval& x) {
  if (mpfr_sgn(x.lower()) >= 0) return x;
  if (mpfr_sgn(x.upper()) <= 0) return -x;
  Interval r(x.precision());
  Real a(x.precision());
  mpfr_neg(a.get(), x.lower(), MPFR_RNDU);
  mpfr_set_zero(lo_of(r), 1);
  mpfr_max(hi_of(r), a.get(), x.upper(), MPFR_RNDU);
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_max(lo_of(r), a.lower(), b.lower(), MPFR_RNDD);
  mpfr_max(hi_of(r), a.upper(), b.upper(), MPFR_RNDU);
  return r;
}

Interval min(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_min(lo_of(r), a.lower(), b.lower(), MPFR_RNDD);
  mpfr_min(hi_of(r), a.upper(), b.upper(), MPFR_RNDU);
  return r;
}

Interval with_precision(const Interval& x, Precision prec) {
  Interval r(prec);
  mpfr_set(lo_of(r), x.lower(), MPFR_RNDD);
  mpfr_set(hi_of(r), x.upper(), MPFR_RNDU);
  return r;
}

bool overlaps(const Interval& a, const Interval& b) {
  return mpfr_lessequal_p(a.lower(), b.upper()) && mpfr_lessequal_p(b.lower(), a.upper());
}

Verdict greater(const Interval& a, const Interval& b) {
  if (mpfr_greater_p(a.lower(), b.upper())) return Verdict::pass;
  if (mpfr_lessequal_p(a.upper(), b.lower())) return Verdict::fail;
  return Verdict::indeterminate;
}

Verdict less(const Interval& a, const Interval& b) { return greater(b, a); }

namespace {

std::string format_real(mpfr_srcptr v, int digits, mpfr_rnd_t rnd) {
  char* buf = nullptr;
  const char* fmt = rnd == MPFR_RNDU ? "%.*RUg" : "%.*RNg";
  if (mpfr_asprintf(&buf, fmt, digits, v) < 0) return "?";
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace

std::string to_string(const Interval& x, int digits) {
  const Precision prec = x.precision();
  const int max_digits = static_cast<int>(std::ceil(static_cast<double>(prec) * 0.30103)) + 1;
  digits = std::max(1, std::min(digits, max_digits));
  Real m = x.mid();
  Real r = x.radius();
  std::string mid_text = format_real(m.get(), digits, MPFR_RNDN);
  // Pad the radius by the exact decimal rounding error of the printed midpoint.
  if (mpfr_number_p(m.get())) {
    Rational printed = parse_decimal(mid_text);
    Rational exact;
    mpfr_get_q(exact.get_mpq_t(), m.get());
    Rational gap = abs(exact - printed);
    Real slack(prec);
    mpfr_set_q(slack.get(), gap.get_mpq_t(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), slack.get(), MPFR_RNDU);
  }
  return mid_text + " ± " + format_real(r.get(), 3, MPFR_RNDU);
}

// ---------------------------------------------------------------------------

Ball::Ball(Precision prec) : re_(prec), im_(prec) {}
Ball::Ball(Interval re) : re_(std::move(re)), im_(re_.precision()) {}
Ball::Ball(Interval re, Interval im) : re_(std::move(re)), im_(std::move(im)) {}

Ball Ball::from_rational(const Rational& re, const Rational& im, Precision prec) {
  return Ball(Interval(re, prec), Interval(im, prec));
}

Precision Ball::precision() const { return std::max(re_.precision(), im_.precision()); }

double Ball::radius() const {
  Real a = re_.radius(), b = im_.radius();
  mpfr_hypot(a.get(), a.get(), b.get(), MPFR_RNDU);
  return mpfr_get_d(a.get(), MPFR_RNDU);
}

Ball Ball::operator-() const { return Ball(-re_, -im_); }

Ball& Ball::operator+=(const Ball& b) {
  re_ += b.re_;
  im_ += b.im_;
  return *this;
}

Ball& Ball::operator-=(const Ball& b) {
  re_ -= b.re_;
  im_ -= b.im_;
  return *this;
}

Ball& Ball::operator*=(const Ball& b) {
  if (b.is_real()) return *this *= b.re_;
  if (is_real()) {
    Ball r = b * re_;
    *this = std::move(r);
    return *this;
  }
  Interval re = re_ * b.re_ - im_ * b.im_;
  Interval im = re_ * b.im_ + im_ * b.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Ball& Ball::operator*=(const Interval& s) {
  re_ *= s;
  im_ *= s;
  return *this;
}

Ball& Ball::operator/=(const Ball& b) {
  if (b.is_real()) {
    re_ /= b.re_;
    im_ /= b.re_;
    return *this;
  }
  Interval den = norm(b);
  *this *= conj(b);
  re_ /= den;
  im_ /= den;
  return *this;
}

Ball conj(const Ball& z) { return Ball(z.re(), -z.im()); }

Interval norm(const Ball& z) { return sqr(z.re()) + sqr(z.im()); }

Interval abs(const Ball& z) {
  if (z.is_real()) return abs(z.re());
  return sqrt(norm(z));
}

Interval arg(const Ball& z) {
  const Precision prec = z.precision();
  const Interval& x = z.re();
  const Interval& y = z.im();
  if (z.contains_zero()) throw PrecisionError("arg: enclosure contains zero");
  if (y.is_exact_zero()) {
    if (x.positive()) return Interval(0L, prec);
    return Interval::pi(prec);
  }
  if (mpfr_sgn(x.lower()) < 0) {
    // On or across the negative real axis.
    const int ylo = mpfr_sgn(y.lower());
    const int yhi = mpfr_sgn(y.upper());
    if (ylo < 0 && yhi >= 0) throw PrecisionError("arg: enclosure straddles the branch cut");
  }
  Interval r(prec);
  mpfr_set_inf(lo_of(r), 1);
  mpfr_set_inf(hi_of(r), -1);
  Real t(prec), yy(prec), xx(prec);
  for (mpfr_srcptr yc : {y.lower(), y.upper()}) {
    for (mpfr_srcptr xc : {x.lower(), x.upper()}) {
      mpfr_set(yy.get(), yc, MPFR_RNDN);
      mpfr_set(xx.get(), xc, MPFR_RNDN);
      unsign_zero(yy.get());
      unsign_zero(xx.get());
      if (mpfr_zero_p(yy.get()) && mpfr_zero_p(xx.get())) continue;
      mpfr_atan2(t.get(), yy.get(), xx.get(), MPFR_RNDD);
      mpfr_min(lo_of(r), lo_of(r), t.get(), MPFR_RNDD);
      mpfr_atan2(t.get(), yy.get(), xx.get(), MPFR_RNDU);
      mpfr_max(hi_of(r), hi_of(r), t.get(), MPFR_RNDU);
    }
  }
  return r;
}

Ball exp(const Ball& z) {
  Interval m = exp(z.re());
  if (z.is_real()) return Ball(m);
  return Ball(m * cos(z.im()), m * sin(z.im()));
}

Ball pow(const Ball& z, unsigned long k) {
  Ball result(Interval(1L, z.precision()));
  Ball base = z;
  while (k > 0) {
    if (k & 1UL) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Ball principal_rpow(const Ball& z, const Rational& e) {
  const Precision prec = z.precision();
  if (e == 0) return Ball(Interval(1L, prec));
  if (z.re().is_exact_zero() && z.im().is_exact_zero()) {
    if (e > 0) return Ball(prec);
    throw DomainError("principal_rpow: zero to a negative power");
  }
  if (z.is_real() && z.re().positive()) return Ball(pow(z.re(), Interval(e, prec)));
  Interval modulus = exp(Interval(e, prec) * log(abs(z)));
  Interval angle = Interval(e, prec) * arg(z);
  return Ball(modulus * cos(angle), modulus * sin(angle));
}

Ball principal_power(const Ball& w, unsigned long m, unsigned long n) {
  if (!(0 < m && m < n) || gcd(Integer(m), Integer(n)) != 1)
    throw DomainError("principal_power: need 0 < m < n with gcd(m, n) = 1");
  if (w.contains_zero()) {
    if (w.re().is_exact_zero() && w.im().is_exact_zero()) return Ball(w.precision());
    throw PrecisionError("principal_power: enclosure contains zero");
  }
  return principal_rpow(w, Rational(static_cast<long>(m), static_cast<long>(n)));
}

Ball some_sqrt(const Ball& z) {
  try {
    return principal_rpow(z, Rational(1, 2));
  } catch (const PrecisionError&) {
    // Near the negative axis: i * sqrt(-z) squares to z as well.
    Ball s = principal_rpow(-z, Rational(1, 2));
    return Ball(-s.im(), s.re());
  }
}

Ball with_precision(const Ball& z, Precision prec) {
  return Ball(with_precision(z.re(), prec), with_precision(z.im(), prec));
}

bool overlaps(const Ball& a, const Ball& b) {
  return overlaps(a.re(), b.re()) && overlaps(a.im(), b.im());
}

bool contains(const Ball& a, const Ball& b) {
  return a.re().contains(b.re()) && a.im().contains(b.im());
}

std::string to_string(const Ball& z, int digits) {
  if (z.is_real()) return to_string(z.re(), digits);
  return "(" + to_string(z.re(), digits) + ") + (" + to_string(z.im(), digits) + ")i";
}

}  // namespace irrmeasure

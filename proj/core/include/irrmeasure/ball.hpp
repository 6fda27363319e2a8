#ifndef IRRMEASURE_BALL_HPP
#define IRRMEASURE_BALL_HPP

// Rigorous enclosures on top of MPFR.
//
// Interval is a closed real interval [lo, hi] whose endpoints are always
// rounded outward, so the exact value of any expression built from these
// operations lies inside the computed interval. Ball is a complex enclosure
// stored as a rectangle re x im; its midpoint/radius view is derived.

#include <mpfr.h>

#include <string>

#include "irrmeasure/integer.hpp"

namespace irrmeasure {

using Precision = mpfr_prec_t;

/// Default cap for precision escalation.
inline constexpr Precision kMaxPrecision = Precision(1) << 16;

/// Outcome of deciding a strict inequality from enclosures.
enum class Verdict { pass, fail, indeterminate };

const char* to_string(Verdict v);

namespace detail {

class Real {
public:
  explicit Real(Precision prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

private:
  mpfr_t value_;
};

}  // namespace detail

class Interval {
public:
  explicit Interval(Precision prec = 128);
  Interval(long value, Precision prec);
  Interval(const Integer& value, Precision prec);
  Interval(const Rational& value, Precision prec);

  /// Smallest interval containing both arguments.
  static Interval hull(const Interval& a, const Interval& b);
  /// [lo, hi] from exact endpoint values; requires lo <= hi.
  static Interval from_bounds(const Rational& lo, const Rational& hi, Precision prec);
  static Interval pi(Precision prec);

  Precision precision() const { return prec_; }
  mpfr_srcptr lower() const { return lo_.get(); }
  mpfr_srcptr upper() const { return hi_.get(); }

  double lower_d() const;
  double upper_d() const;
  double mid_d() const;
  /// Exact dyadic endpoint values.
  Rational lower_q() const;
  Rational upper_q() const;
  /// Rounded-to-nearest midpoint at the interval's precision.
  detail::Real mid() const;
  /// Upper bound on the half-width.
  detail::Real radius() const;

  bool is_point() const;
  bool is_exact_zero() const;
  bool contains_zero() const;
  bool contains(const Interval& other) const;
  bool contains(const Rational& x) const;
  bool positive() const;  // every point > 0
  bool negative() const;  // every point < 0

  Interval operator-() const;
  Interval& operator+=(const Interval& b);
  Interval& operator-=(const Interval& b);
  Interval& operator*=(const Interval& b);
  Interval& operator/=(const Interval& b);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }

private:
  friend class IntervalAccess;
  Precision prec_;
  detail::Real lo_;
  detail::Real hi_;
};

Interval sqr(const Interval& x);
Interval pow(const Interval& x, unsigned long k);
/// x^e for x > 0, via exp(e log x).
Interval pow(const Interval& x, const Interval& e);
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
Interval abs(const Interval& x);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
/// Same enclosure rounded outward to a new working precision.
Interval with_precision(const Interval& x, Precision prec);

bool overlaps(const Interval& a, const Interval& b);
Verdict greater(const Interval& a, const Interval& b);  // a > b
Verdict less(const Interval& a, const Interval& b);     // a < b

/// "mid ± radius" with up to `digits` significant digits in the midpoint.
std::string to_string(const Interval& x, int digits = 25);

class Ball {
public:
  explicit Ball(Precision prec = 128);
  explicit Ball(Interval re);
  Ball(Interval re, Interval im);
  static Ball from_rational(const Rational& re, const Rational& im, Precision prec);

  const Interval& re() const { return re_; }
  const Interval& im() const { return im_; }
  Precision precision() const;

  double re_mid() const { return re_.mid_d(); }
  double im_mid() const { return im_.mid_d(); }
  /// Upper bound on the distance from (re_mid, im_mid) to any enclosed point.
  double radius() const;

  bool is_real() const { return im_.is_exact_zero(); }
  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }

  Ball operator-() const;
  Ball& operator+=(const Ball& b);
  Ball& operator-=(const Ball& b);
  Ball& operator*=(const Ball& b);
  Ball& operator/=(const Ball& b);
  Ball& operator*=(const Interval& s);

  friend Ball operator+(Ball a, const Ball& b) { return a += b; }
  friend Ball operator-(Ball a, const Ball& b) { return a -= b; }
  friend Ball operator*(Ball a, const Ball& b) { return a *= b; }
  friend Ball operator/(Ball a, const Ball& b) { return a /= b; }
  friend Ball operator*(Ball a, const Interval& s) { return a *= s; }
  friend Ball operator*(const Interval& s, Ball a) { return a *= s; }

private:
  Interval re_;
  Interval im_;
};

Ball conj(const Ball& z);
Interval abs(const Ball& z);
Interval norm(const Ball& z);  // |z|^2
/// Principal argument in (-pi, pi]. Exactly pi on the negative real axis.
/// Throws PrecisionError if the enclosure meets 0 or straddles the cut.
Interval arg(const Ball& z);
Ball exp(const Ball& z);
Ball pow(const Ball& z, unsigned long k);
/// Principal value of z^e = |z|^e e^{i e arg z}.
Ball principal_rpow(const Ball& z, const Rational& e);
/// Principal m/n-th power with 0 < m < n, gcd(m, n) = 1.
Ball principal_power(const Ball& w, unsigned long m, unsigned long n);
/// A square root of z (principal when decidable, otherwise the other branch).
Ball some_sqrt(const Ball& z);
Ball with_precision(const Ball& z, Precision prec);

bool overlaps(const Ball& a, const Ball& b);
/// Rectangle of a contains rectangle of b.
bool contains(const Ball& a, const Ball& b);

std::string to_string(const Ball& z, int digits = 25);

/// Runs f(prec), doubling prec after each PrecisionError until cap is passed.
template <class F>
auto escalate(Precision start, F&& f, Precision cap = kMaxPrecision) {
  for (Precision p = start;; p *= 2) {
    try {
      return f(p);
    } catch (const PrecisionError&) {
      if (p * 2 > cap) throw;
    }
  }
}

}  // namespace irrmeasure

#endif  // IRRMEASURE_BALL_HPP

#ifndef IRRMEASURE_HYPERG_HPP
#define IRRMEASURE_HYPERG_HPP

// The approximant polynomials X_{m,n,r}(x) = 2F1(-r, -r-m/n; 1-m/n; x),
// their denominator/numerator invariants and the remainder of the
// hypergeometric relation z^{m/n} z^r X(1/z) - X(z).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irrmeasure/ball.hpp"
#include "irrmeasure/integer.hpp"
#include "irrmeasure/tower.hpp"

namespace irrmeasure {

struct HypPoly {
  unsigned long m = 0;
  unsigned long n = 0;
  unsigned long r = 0;
  std::vector<Rational> coeffs;  // coefficient of x^k at index k

  Rational operator()(const Rational& x) const;
};

/// Throws DomainError unless 0 < m < n and gcd(m, n) = 1.
void require_exponent(unsigned long m, unsigned long n);

HypPoly x_coeffs(unsigned long m, unsigned long n, unsigned long r);

/// y^r X(x / y), evaluated homogeneously so y = 0 is allowed.
TowerElem x_star_eval(const HypPoly& p, const TowerElem& x, const TowerElem& y);
Rational x_star_eval(const HypPoly& p, const Rational& x, const Rational& y);

Integer denom_D(const HypPoly& p);
Integer denom_D(unsigned long m, unsigned long n, unsigned long r);

/// Coefficients of X(1 - d x), exactly.
std::vector<Rational> shifted_coeffs(const HypPoly& p, const Integer& d);
Integer numer_N(const HypPoly& p, const Integer& d);
Integer numer_N(unsigned long m, unsigned long n, const Integer& d, unsigned long r);

struct InvariantPair {
  Integer D;
  Integer N;
  Integer d;
};

InvariantPair invariants(unsigned long m, unsigned long n, const Integer& d, unsigned long r);

/// prod p^{e_p} with exact rational exponents.
struct ValuationProduct {
  struct Factor {
    Integer prime;
    Rational exponent;
    friend bool operator==(const Factor&, const Factor&) = default;
  };
  std::vector<Factor> factors;

  Interval value(Precision prec) const;
  /// The r-th power as an enclosure: prod p^{r e_p}.
  Interval power(unsigned long r, Precision prec) const;
  /// Exact value when every exponent is an integer.
  std::optional<Integer> exact() const;
  std::string to_string() const;

  friend bool operator==(const ValuationProduct&, const ValuationProduct&) = default;
};

/// prod over p | n of p^{min(v_p(d), v_p(n) + 1/(p-1))}.
ValuationProduct cal_N(const Integer& d, unsigned long n);

struct GammaRatios {
  Rational lower;  // Gamma(1-m/n) r! / Gamma(r+1-m/n)
  Rational upper;  // n Gamma(r+1+m/n) / (m Gamma(m/n) r!)
};

GammaRatios gamma_ratio_bounds(unsigned long m, unsigned long n, unsigned long r);

/// max(1, lower, upper) D_{n,r} / N_{d,n,r}.
Rational cd_left_side(unsigned long m, unsigned long n, const Integer& d, unsigned long r);
/// The same for every r in [0, r_max].
std::vector<Rational> cd_left_sides(unsigned long m, unsigned long n, const Integer& d, unsigned long r_max);

struct BoundRow {
  unsigned long r = 0;
  Rational lhs;
  Interval rhs;
  Verdict verdict = Verdict::indeterminate;
};

struct BoundReport {
  unsigned long m = 0, n = 0;
  Integer d;
  std::vector<BoundRow> rows;
  std::vector<unsigned long> failures;
  std::vector<unsigned long> indeterminate;

  bool pass() const { return failures.empty() && indeterminate.empty(); }
};

/// Decides lhs_r < C (D / cal_N(d, n))^r for every r <= r_max, raising
/// precision on undecided rows up to max_prec.
BoundReport check_CD_bound(unsigned long m, unsigned long n, const Integer& d, const Interval& C,
                           const Interval& D, unsigned long r_max, Precision prec = 128,
                           Precision max_prec = kMaxPrecision);

struct Calibration {
  Interval C;
  Interval D;
  unsigned long r_max = 0;
  Rational margin;
  bool empirical = true;
};

/// Empirical (C_n, D_n) making the bound hold for all r <= r_max. Both are
/// exact dyadic points.
Calibration calibrate_CD(unsigned long m, unsigned long n, const Integer& d, unsigned long r_max,
                         const Rational& margin = Rational(1, 100), Precision prec = 128);

/// z^{m/n} z^r X(1/z) - X(z), principal branch. z must avoid (-inf, 0].
Ball remainder_difference(const Ball& z, unsigned long m, unsigned long n, unsigned long r, Precision prec);

/// The same quantity through its integral representation along [1, z].
Ball remainder_integral(const Ball& z, unsigned long m, unsigned long n, unsigned long r, Precision prec);

}  // namespace irrmeasure

#endif  // IRRMEASURE_HYPERG_HPP

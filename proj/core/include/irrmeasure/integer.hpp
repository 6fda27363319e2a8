#ifndef IRRMEASURE_INTEGER_HPP
#define IRRMEASURE_INTEGER_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace irrmeasure {

using Integer = mpz_class;
using Rational = mpq_class;

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An enclosure was too wide to decide a comparison; retry at higher precision.
class PrecisionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct PrimePower {
  Integer prime;
  unsigned long exponent = 0;
};

/// Prime factorisation of |n| by trial division, primes ascending. n != 0.
std::vector<PrimePower> factor(const Integer& n);

bool is_prime(const Integer& n);

/// Squarefree kernel with the sign of n: n / core(n) is a positive square.
Integer core(const Integer& n);

bool is_squarefree(const Integer& n);

/// Exact integer square root, if n is a perfect square.
std::optional<Integer> exact_sqrt(const Integer& n);

/// Exact rational square root, if x is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& x);

/// v_p(x). Throws DomainError for x == 0 (the valuation is infinite).
long val_p(const Integer& p, const Integer& x);
long val_p(const Integer& p, const Rational& x);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Mathematical residue in [0, m).
Integer mod(const Integer& a, const Integer& m);

bool is_integer(const Rational& x);

Integer pow(const Integer& base, unsigned long e);

/// num/den in lowest terms.
Rational ratio(const Integer& num, const Integer& den);
Rational pow(const Rational& base, unsigned long e);

/// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

/// Parses "a", "-a/b", with optional surrounding whitespace. Throws DomainError.
Rational parse_rational(const std::string& text);

/// Exact value of a decimal such as "-1.25e-3"; also accepts "a/b". Throws DomainError.
Rational parse_decimal(const std::string& text);

}  // namespace irrmeasure

#endif  // IRRMEASURE_INTEGER_HPP

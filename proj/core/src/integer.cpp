#include "irrmeasure/integer.hpp"

#include <algorithm>
#include <cctype>

namespace irrmeasure {

std::vector<PrimePower> factor(const Integer& n) {
  if (n == 0) throw DomainError("factor: zero has no factorisation");
  Integer m = abs(n);
  std::vector<PrimePower> out;
  auto take = [&](const Integer& p) {
    unsigned long e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  take(2);
  take(3);
  // 6k +- 1 wheel
  for (Integer p = 5; p * p <= m; p += 6) {
    if (mpz_probab_prime_p(m.get_mpz_t(), 40) > 0) break;
    take(p);
    Integer q = p + 2;
    take(q);
  }
  if (m > 1) out.push_back({m, 1});
  return out;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Integer core(const Integer& n) {
  if (n == 0) throw DomainError("core: argument must be nonzero");
  Integer out = sgn(n) < 0 ? Integer(-1) : Integer(1);
  for (const auto& pp : factor(n))
    if (pp.exponent % 2 == 1) out *= pp.prime;
  return out;
}

bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  for (const auto& pp : factor(n))
    if (pp.exponent > 1) return false;
  return true;
}

std::optional<Integer> exact_sqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  auto num = exact_sqrt(Integer(x.get_num()));
  auto den = exact_sqrt(Integer(x.get_den()));
  if (!num || !den) return std::nullopt;
  Rational r(*num, *den);
  r.canonicalize();
  return r;
}

long val_p(const Integer& p, const Integer& x) {
  if (x == 0) throw DomainError("val_p: valuation of zero is infinite");
  if (p < 2) throw DomainError("val_p: p must be prime");
  Integer m = abs(x);
  long e = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++e;
  }
  return e;
}

long val_p(const Integer& p, const Rational& x) {
  if (x == 0) throw DomainError("val_p: valuation of zero is infinite");
  return val_p(p, Integer(x.get_num())) - val_p(p, Integer(x.get_den()));
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational pow(const Rational& base, unsigned long e) {
  Rational r(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational ratio(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("ratio: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  std::string s;
  std::copy_if(text.begin(), text.end(), std::back_inserter(s),
               [](unsigned char c) { return !std::isspace(c); });
  if (s.empty()) throw DomainError("parse_rational: empty string");
  auto valid_int = [](const std::string& part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i >= part.size()) return false;
    return std::all_of(part.begin() + static_cast<long>(i), part.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw DomainError("parse_rational: malformed rational '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den, 10);
  if (d == 0) throw DomainError("parse_rational: zero denominator in '" + text + "'");
  Rational r(Integer(num, 10), d);
  r.canonicalize();
  return r;
}

Rational parse_decimal(const std::string& text) {
  if (text.find('/') != std::string::npos) return parse_rational(text);
  std::string mant = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    mant = text.substr(0, e);
    const std::string ex = text.substr(e + 1);
    std::size_t used = 0;
    try {
      exponent = std::stol(ex, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (ex.empty() || used != ex.size()) throw DomainError("parse_decimal: malformed exponent in '" + text + "'");
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant.erase(0, 1);
  }
  std::string digits;
  int dots = 0;
  for (char c : mant) {
    if (c == '.') {
      ++dots;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
    } else {
      throw DomainError("parse_decimal: malformed number '" + text + "'");
    }
  }
  if (digits.empty() || dots > 1) throw DomainError("parse_decimal: malformed number '" + text + "'");
  if (auto dot = mant.find('.'); dot != std::string::npos) exponent -= static_cast<long>(mant.size() - dot - 1);
  Rational q{Integer(digits, 10)};
  Integer scale = pow(Integer(10), static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0) {
    q *= scale;
  } else {
    q /= scale;
  }
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

}  // namespace irrmeasure

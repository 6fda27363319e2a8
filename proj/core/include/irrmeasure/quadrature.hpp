#ifndef IRRMEASURE_QUADRATURE_HPP
#define IRRMEASURE_QUADRATURE_HPP

// Validated Gauss-Legendre quadrature for functions analytic near a real
// segment. The integrand is evaluated on complex boxes; the truncation error
// is bounded through the maximum of |f| on a Bernstein ellipse.

#include <functional>
#include <vector>

#include "irrmeasure/ball.hpp"

namespace irrmeasure {

/// Gauss-Legendre rule on [-1, 1]. Each node interval provably contains
/// exactly one root of P_n, and each weight interval the matching weight.
struct GaussRule {
  std::vector<Interval> nodes;
  std::vector<Interval> weights;
};

GaussRule gauss_legendre(unsigned n, Precision prec);

/// Integrand evaluated on a complex box; may throw PrecisionError or
/// DomainError on boxes where it is not analytic.
using BoxFunction = std::function<Ball(const Ball&)>;

struct QuadratureOptions {
  /// Absolute error target is 2^-tol_bits times the size of f on the segment.
  long tol_bits = 0;  // 0 means prec - 32
  unsigned max_nodes = 160;
  unsigned max_depth = 16;
};

/// Rigorous enclosure of the integral of f over [a, b].
Ball integrate(const BoxFunction& f, const Rational& a, const Rational& b, Precision prec,
               const QuadratureOptions& opts = {});

}  // namespace irrmeasure

#endif  // IRRMEASURE_QUADRATURE_HPP

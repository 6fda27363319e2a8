#ifndef IRRMEASURE_VERIFY_HPP
#define IRRMEASURE_VERIFY_HPP

// Brute-force checks of |alpha - p/q| > 1 / (c |q|^(kappa+1)) over all
// denominators up to a bound, for real alpha (p, q in Z) and for alpha
// approximated from an imaginary quadratic ring of integers.

#include <string>
#include <utility>
#include <vector>

#include "irrmeasure/ball.hpp"
#include "irrmeasure/tower.hpp"

namespace irrmeasure {

struct ConvergentList {
  std::vector<std::pair<Integer, Integer>> convergents;  // (p, q)
  bool exact = false;       // alpha is rational and fully expanded
  bool truncated = false;   // stopped before depth
  std::string reason;
};

/// Convergents whose partial quotients are certified by the enclosure.
ConvergentList convergents(const Ball& alpha, std::size_t depth);
ConvergentList convergents(const Rational& alpha, std::size_t depth);

struct ScanResult {
  Integer q_max{0};
  BaseElem worst_q, worst_p;
  Interval worst_margin;  // min |q alpha - p| c |q|^kappa
  Verdict verdict = Verdict::indeterminate;
  std::size_t scanned = 0;
  std::vector<BaseElem> undecided;  // q whose margin enclosure contains 1

  bool pass() const { return verdict == Verdict::pass; }
};

ScanResult scan_real(const Ball& alpha, const Interval& c, const Interval& kappa, const Integer& q_max);

/// Ring of integers of Q(sqrt(-D)), basis {1, omega}.
BaseElem omega(const BaseField& field);

/// Nonzero a + b omega with |a + b omega| <= q_max, as (a, b).
std::vector<std::pair<Integer, Integer>> lattice_points(const Integer& D, const Integer& q_max);

/// real_only restricts q and p to the sublattice b = 0.
ScanResult scan_imquad(const Ball& alpha, const Interval& c, const Interval& kappa, const Integer& q_max,
                       const Integer& D, bool real_only = false);

/// Bits of precision for alpha so its radius is below q_max^-(kappa+2).
Precision scan_precision(const Interval& kappa, const Integer& q_max);

}  // namespace irrmeasure

#endif  // IRRMEASURE_VERIFY_HPP

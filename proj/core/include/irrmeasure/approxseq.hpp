#ifndef IRRMEASURE_APPROXSEQ_HPP
#define IRRMEASURE_APPROXSEQ_HPP

// The approximant sequences p_r, q_r in L built from X*(eta, sigma(eta)),
// exact integrality and conjugacy certificates, and numerical checks of
// the growth bounds |q_r| <= k0 Q^r and |q_r theta - p_r| <= l0 E^-r.

#include <string>
#include <vector>

#include "irrmeasure/measures.hpp"

namespace irrmeasure {

struct ApproximantPair {
  unsigned long r = 0;
  TowerElem p, q;
  ScaledRoot h_r;
  /// h_r D / (g^r N), an element of K.
  TowerElem scale;
  bool p_int_cert = false;
  bool q_int_cert = false;
  bool conj_cert = false;  // q = sigma(p)
};

/// Throws InvariantError if a certificate fails.
ApproximantPair build_pq(const Theorem2Instance& inst, const Integer& d, unsigned long r);
ApproximantPair build_pq(const Theorem2Instance& inst, unsigned long r);
ApproximantPair build_pq(const CorollaryInstance& inst, unsigned long r);

std::vector<ApproximantPair> build_sequence(const Theorem2Instance& inst, unsigned long r_max);

/// p_r q_{r+1} - p_{r+1} q_r.
TowerElem determinant(const ApproximantPair& a, const ApproximantPair& b);

struct GrowthRow {
  unsigned long r = 0;
  Interval q_abs, err_abs;      // |q_r|, |q_r theta - p_r|
  Interval q_bound, err_bound;  // k0 Q^r, l0 E^-r
  Interval residual;            // err_abs / |h_r D / (g^r N)|
  Verdict q_ok = Verdict::indeterminate;
  Verdict err_ok = Verdict::indeterminate;
  bool det_nonzero = true;  // against r + 1; true on the last row
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  unsigned long fit_lo = 0, fit_hi = 0;
  Interval q_slope, err_slope;  // least-squares slopes of log|q_r| and -log|q_r theta - p_r|
  Interval log_Q, log_E;
  Verdict q_rate = Verdict::indeterminate;    // |slope - log Q| < 5% log Q
  Verdict err_rate = Verdict::indeterminate;  // |slope - log E| < 5% log E
  /// Strict decrease of err_abs over the fit range. The jumps of D/N can break it.
  bool monotone_tail = false;
  /// Strict decrease of residual over the fit range.
  bool monotone_residual = false;
  std::vector<unsigned long> failures;    // rows where (a) or (b) fails
  std::vector<unsigned long> degenerate;  // rows with vanishing determinant
  Precision precision = 0;

  bool pass() const { return failures.empty() && degenerate.empty(); }
};

/// rep supplies k0, l0, E, Q (from theorem2, theorem3 or corollary1).
GrowthReport verify_bounds(const Theorem2Instance& inst, const MeasureReport& rep, unsigned long r_max,
                           Precision prec = 128);

struct RemainderCheck {
  Ball direct;          // q_r theta - p_r
  Ball via_remainder;   // scale sigma(eta)^r (rho^{m/n} rho^r X(1/rho) - X(rho))
  bool overlap = false;
};

RemainderCheck remainder_consistency(const Theorem2Instance& inst, const Integer& d, unsigned long r,
                                     Precision prec);

}  // namespace irrmeasure

#endif  // IRRMEASURE_APPROXSEQ_HPP

#ifndef IRRMEASURE_MEASURES_HPP
#define IRRMEASURE_MEASURES_HPP

// Effective irrationality measure constants (E, Q, kappa, c) for numbers
// built from a quadratic pair eta, sigma(eta), and the bookkeeping that
// feeds them: the integrality scale g, the divisor d, and twists by roots
// of unity.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irrmeasure/ball.hpp"
#include "irrmeasure/hyperg.hpp"
#include "irrmeasure/tower.hpp"

namespace irrmeasure {

struct Precondition {
  std::string name;
  Verdict verdict = Verdict::indeterminate;
  std::string detail;
};

struct MeasureReport {
  std::string method;
  Ball alpha;
  Ball theta;
  Interval E, Q, kappa, c;
  Interval k0, l0;
  Integer d{1};
  ValuationProduct N_dn;
  Interval C, D;
  bool empirical = false;
  std::vector<Precondition> preconditions;
  std::map<std::string, std::string> provenance;
  Precision precision = 0;

  bool ok() const;
  /// First precondition that did not pass, or nullptr.
  const Precondition* first_failure() const;
  const Precondition* find(const std::string& name) const;
};

/// log Q / log E. Throws DomainError if E <= 1 or Q <= 1 is certain,
/// PrecisionError if it cannot be decided.
Interval kappa(const Interval& E, const Interval& Q);

/// 2 k0 Q (max(1, 2 l0) E)^kappa.
Interval lemma_c(const Interval& k0, const Interval& l0, const Interval& E, const Interval& Q);

struct ApproxSystem {
  std::vector<Ball> theta;  // theta[0] = 1
  std::vector<Ball> beta_conj;
  std::vector<Ball> gamma_conj;
  Interval k0, l0, E, Q;
  Interval tau_abs;  // |sqrt(tau)|, 1 over Q
  int sign = 1;
  /// Exact beta, gamma for deciding beta/gamma outside K (quadratic case).
  std::optional<TowerElem> beta, gamma;
};

MeasureReport prop1_general(const ApproxSystem& sys);
MeasureReport prop1_quadratic(const ApproxSystem& sys);

struct Theorem2Instance {
  FieldPtr field;
  TowerElem beta, gamma, eta;
  unsigned long m = 1, n = 2;
  int sign = 1;
  /// eta/g and sigma(eta)/g must be algebraic integers.
  ScaledRoot g;
  /// h_r by parity of r; h = sqrt(h_sq) bounds |h_r|.
  ScaledRoot h_even, h_odd;
  Rational h_sq = 1;
  std::optional<Interval> C, D;
  bool empirical = false;
  unsigned long calibration_r_max = 200;
  /// Twist: theta uses (mu eta / sigma(eta))^{m/n} instead.
  std::optional<TowerElem> mu;
  Precision precision = 256;

  static Theorem2Instance make(FieldPtr field, TowerElem beta, TowerElem gamma, TowerElem eta, unsigned long m,
                               unsigned long n, int sign, ScaledRoot g);
  const ScaledRoot& h_r(unsigned long r) const { return r % 2 == 0 ? h_even : h_odd; }
};

/// Largest positive integer d with (sigma(eta) - eta)/(d g) an algebraic
/// integer; 1 if no such d exists.
Integer largest_d(const TowerElem& eta, const ScaledRoot& g);

/// |sqrt(tau)| for L = K(sqrt tau), taken as 1 over Q.
Interval tau_abs(const TowerField& field, Precision prec);

/// Exact decision of "0 < eta/sigma(eta) < 1, or |eta/sigma(eta)| = 1 and
/// eta/sigma(eta) != -1" where possible.
Precondition ratio_condition(const TowerElem& eta, Precision prec);

/// Fills C, D by calibration when absent (marking the instance empirical).
Theorem2Instance with_constants(Theorem2Instance inst, const Integer& d);

/// theta = ratio^{m/n} and alpha = (beta theta +- sigma beta)/(gamma theta +- sigma gamma).
struct AlphaTheta {
  Ball theta;
  Ball alpha;
};
AlphaTheta alpha_theta(const Theorem2Instance& inst, Precision prec);

MeasureReport theorem2(const Theorem2Instance& inst);
MeasureReport theorem3(const Theorem2Instance& inst);

struct CorollaryInstance {
  Integer u1, u2, t;
  unsigned long m = 1, n = 2;
  std::optional<TowerElem> beta, gamma;  // default 1 and sqrt(t)
  int sign = 1;
  std::optional<Interval> C, D;
  unsigned long calibration_r_max = 200;
  Precision precision = 256;
};

struct CorollaryChain {
  FieldPtr field;
  TowerElem eta;
  Integer g1, g2, g3, g4, g5;
  Integer core_tg2g3;
  Integer d1;
  ScaledRoot g;
  Integer d;
};

CorollaryChain corollary_chain(const Integer& u1, const Integer& u2, const Integer& t, unsigned long n);
CorollaryChain corollary_chain(const CorollaryInstance& inst);

MeasureReport corollary1(const CorollaryInstance& inst);

/// Equivalent generic instance: eta scaled by 1 or 2 to make it integral
/// (and g with it), h_r from h_sequence, h = sqrt|2t|.
Theorem2Instance to_theorem2(const CorollaryInstance& inst, const CorollaryChain& chain);

struct HTerm {
  ScaledRoot h_r;
  Interval bound;  // sqrt|2t|
  Rational h_over_g_r;
};

/// h_r = 1 for even r and sqrt(core(g2 g3 g4 g5)) for odd r, certified.
HTerm h_sequence(const CorollaryChain& chain, const Integer& t, unsigned long r, Precision prec = 128);

enum class MuKind { minus_one, i, zeta3, zeta6 };
MuKind parse_mu_kind(const std::string& s);
std::string to_string(MuKind k);

struct MuAbsorption {
  FieldPtr field;
  TowerElem nu;
  TowerElem mu;  // nu / sigma(nu)
  std::string note;
};

/// nu in L with nu/sigma(nu) = mu. Throws DomainError when L does not
/// contain the required root.
MuAbsorption mu_absorb(const BaseField& base, const BaseElem& tau, MuKind kind);
MuAbsorption mu_absorb(const FieldPtr& field, MuKind kind);

}  // namespace irrmeasure

#endif  // IRRMEASURE_MEASURES_HPP

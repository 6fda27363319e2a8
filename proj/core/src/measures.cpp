#include "irrmeasure/measures.hpp"

#include <algorithm>

namespace irrmeasure {

namespace {

Interval one(Precision p) { return Interval(1L, p); }

Precondition exact_check(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok ? Verdict::pass : Verdict::fail, std::move(detail)};
}

Interval realpow(const Interval& x, const Interval& e) { return exp(e * log(x)); }

// Sign of x + y sqrt(t) for rational x, y and t > 0.
int real_sign(const TowerElem& e) {
  const Rational& x = e.x().a();
  const Rational& y = e.y().a();
  const Rational& t = e.field()->radicand().a();
  int sx = sgn(x), sy = sgn(y);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  Rational lhs = x * x, rhs = y * y * t;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sx : sy;
}

bool real_embedding(const TowerField& f) {
  return f.base().is_rational() && f.radicand().a() > 0;
}

// Complex conjugation on L, available when tau is rational.
TowerElem complex_conj(const TowerElem& e) {
  const bool real_root = e.field()->radicand().a() > 0;
  BaseElem y = e.y().conj();
  if (!real_root) y = -y;
  return TowerElem(e.field(), e.x().conj(), y);
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::indeterminate || b == Verdict::indeterminate) return Verdict::indeterminate;
  return Verdict::pass;
}

Verdict either(Verdict a, Verdict b) {
  if (a == Verdict::pass || b == Verdict::pass) return Verdict::pass;
  if (a == Verdict::indeterminate || b == Verdict::indeterminate) return Verdict::indeterminate;
  return Verdict::fail;
}

bool any_indeterminate(const MeasureReport& rep) {
  return std::any_of(rep.preconditions.begin(), rep.preconditions.end(),
                     [](const Precondition& p) { return p.verdict == Verdict::indeterminate; });
}

// max(E, x)^kappa and the two c prefactors share this shape.
Interval c_shape(const Interval& front, const Interval& E, const Interval& inner, const Interval& kap) {
  return front * realpow(max(E, inner), kap);
}

}  // namespace

bool MeasureReport::ok() const { return first_failure() == nullptr; }

const Precondition* MeasureReport::first_failure() const {
  for (const auto& p : preconditions)
    if (p.verdict != Verdict::pass) return &p;
  return nullptr;
}

const Precondition* MeasureReport::find(const std::string& name) const {
  for (const auto& p : preconditions)
    if (p.name == name) return &p;
  return nullptr;
}

Interval kappa(const Interval& E, const Interval& Q) {
  const Precision p = std::max(E.precision(), Q.precision());
  for (const Interval* x : {&E, &Q}) {
    Verdict v = greater(*x, one(p));
    if (v == Verdict::fail) throw DomainError("kappa: E and Q must exceed 1");
    if (v == Verdict::indeterminate) throw PrecisionError("kappa: cannot decide E, Q > 1");
  }
  return log(Q) / log(E);
}

Interval lemma_c(const Interval& k0, const Interval& l0, const Interval& E, const Interval& Q) {
  const Precision p = E.precision();
  Interval kap = kappa(E, Q);
  Interval inner = max(one(p), Interval(2L, p) * l0) * E;
  return Interval(2L, p) * k0 * Q * realpow(inner, kap);
}

namespace {

void numeric_gates(MeasureReport& rep) {
  const Precision p = rep.E.precision();
  rep.preconditions.push_back({"E_gt_1", greater(rep.E, one(p)), "E = " + to_string(rep.E)});
  rep.preconditions.push_back({"Q_gt_1", greater(rep.Q, one(p)), "Q = " + to_string(rep.Q)});
}

bool gates_pass(const MeasureReport& rep) {
  const Precondition* e = rep.find("E_gt_1");
  const Precondition* q = rep.find("Q_gt_1");
  return e && q && e->verdict == Verdict::pass && q->verdict == Verdict::pass;
}

}  // namespace

MeasureReport prop1_general(const ApproxSystem& sys) {
  const std::size_t s = sys.theta.size();
  if (s < 2 || sys.beta_conj.size() != s || sys.gamma_conj.size() != s)
    throw DomainError("prop1_general: need s >= 2 matching theta, beta, gamma lists");
  const Precision p = sys.E.precision();
  MeasureReport rep;
  rep.method = "prop1_general";
  rep.precision = p;
  rep.E = sys.E;
  rep.Q = sys.Q;
  rep.k0 = sys.k0;
  rep.l0 = sys.l0;
  const Ball& t0 = sys.theta[0];
  rep.preconditions.push_back(exact_check("theta1_is_1", t0.is_real() && t0.re().is_point() && t0.re().contains(Rational(1))));
  Ball num(p), den(p);
  for (std::size_t i = 0; i < s; ++i) {
    num += sys.beta_conj[i] * sys.theta[i];
    den += sys.gamma_conj[i] * sys.theta[i];
  }
  if (den.contains_zero()) throw PrecisionError("prop1_general: denominator enclosure contains zero");
  rep.alpha = num / den;
  rep.theta = sys.theta.size() > 1 ? sys.theta[1] : t0;
  numeric_gates(rep);
  rep.provenance["alpha"] = "sum sigma_i(beta) theta_i / sum sigma_i(gamma) theta_i";
  rep.provenance["kappa"] = "log Q / log E";
  rep.provenance["c"] = "2 (sum |sigma_i(gamma)|) k0 Q max{E, 2 (sum_{i>=2} |sigma_i(beta) - alpha sigma_i(gamma)|) l0 E}^kappa";
  if (!gates_pass(rep)) return rep;
  Interval sg(p), sb(p);
  for (std::size_t i = 0; i < s; ++i) sg += abs(sys.gamma_conj[i]);
  for (std::size_t i = 1; i < s; ++i) sb += abs(sys.beta_conj[i] - rep.alpha * sys.gamma_conj[i]);
  rep.kappa = kappa(rep.E, rep.Q);
  Interval inner = Interval(2L, p) * sb * sys.l0 * rep.E;
  rep.c = c_shape(Interval(2L, p) * sg * sys.k0 * rep.Q, rep.E, inner, rep.kappa);
  return rep;
}

MeasureReport prop1_quadratic(const ApproxSystem& sys) {
  if (sys.theta.size() != 2 || sys.beta_conj.size() != 2 || sys.gamma_conj.size() != 2)
    throw DomainError("prop1_quadratic: need s = 2");
  if (sys.sign != 1 && sys.sign != -1) throw DomainError("prop1_quadratic: sign must be +1 or -1");
  const Precision p = sys.E.precision();
  MeasureReport rep;
  rep.method = "prop1_quadratic";
  rep.precision = p;
  rep.E = sys.E;
  rep.Q = sys.Q;
  rep.k0 = sys.k0;
  rep.l0 = sys.l0;
  const Ball& b1 = sys.beta_conj[0];
  const Ball& b2 = sys.beta_conj[1];
  const Ball& g1 = sys.gamma_conj[0];
  const Ball& g2 = sys.gamma_conj[1];
  const Ball& th = sys.theta[1];
  if (sys.beta && sys.gamma) {
    bool outside = !(*sys.beta * conj(*sys.gamma) == conj(*sys.beta) * *sys.gamma);
    rep.preconditions.push_back(exact_check("beta_over_gamma_not_in_K", outside));
  } else {
    Ball det = b2 * g1 - b1 * g2;
    rep.preconditions.push_back({"beta_over_gamma_not_in_K", det.contains_zero() ? Verdict::indeterminate : Verdict::pass,
                                 "decided from enclosures"});
  }
  Ball num = sys.sign > 0 ? b2 * th + b1 : b2 * th - b1;
  Ball den = sys.sign > 0 ? g2 * th + g1 : g2 * th - g1;
  if (den.contains_zero()) throw PrecisionError("prop1_quadratic: denominator enclosure contains zero");
  rep.alpha = num / den;
  rep.theta = th;
  numeric_gates(rep);
  rep.provenance["alpha"] = "(sigma2(beta) theta2 +- beta) / (sigma2(gamma) theta2 +- gamma)";
  rep.provenance["kappa"] = "log Q / log E";
  rep.provenance["c"] = "2 |sqrt tau| (|gamma| + |sigma2(gamma)|) k0 Q max{E, 2 |sqrt tau| |sigma2(beta) - alpha sigma2(gamma)| l0 E}^kappa";
  if (!gates_pass(rep)) return rep;
  rep.kappa = kappa(rep.E, rep.Q);
  Interval front = Interval(2L, p) * sys.tau_abs * (abs(g1) + abs(g2)) * sys.k0 * rep.Q;
  Interval inner = Interval(2L, p) * sys.tau_abs * abs(b2 - rep.alpha * g2) * sys.l0 * rep.E;
  rep.c = c_shape(front, rep.E, inner, rep.kappa);
  return rep;
}

Theorem2Instance Theorem2Instance::make(FieldPtr field, TowerElem beta, TowerElem gamma, TowerElem eta,
                                        unsigned long m, unsigned long n, int sign, ScaledRoot g) {
  ScaledRoot unit = ScaledRoot::one(field);
  return Theorem2Instance{field, std::move(beta), std::move(gamma), std::move(eta), m, n, sign, std::move(g),
                          unit, unit, 1, std::nullopt, std::nullopt, false, 200, std::nullopt, 256};
}

Integer largest_d(const TowerElem& eta, const ScaledRoot& g) {
  TowerElem diff = conj(eta) - eta;
  if (diff.is_zero()) return 1;
  TowerElem W = diff * diff / g.square();
  if (!is_alg_integer(W)) return 1;
  Rational norm = W.absolute_norm();
  Integer out = 1;
  for (const auto& pp : factor(Integer(abs(norm.get_num())))) {
    Integer pe = 1;
    while (true) {
      Integer next = pe * pp.prime;
      if (!is_alg_integer(W * ratio(1, next * next))) break;
      pe = next;
    }
    out *= pe;
  }
  return out;
}

Interval tau_abs(const TowerField& field, Precision prec) {
  if (field.base().is_rational()) return one(prec);
  return sqrt(abs(field.radicand().embed(prec)));
}

Precondition ratio_condition(const TowerElem& eta, Precision prec) {
  const std::string name = "ratio_condition";
  const TowerElem s = conj(eta);
  if (s.is_zero()) return {name, Verdict::fail, "sigma(eta) = 0"};
  if ((eta + s).is_zero()) return {name, Verdict::fail, "eta/sigma(eta) = -1"};
  if (eta.in_base()) return {name, Verdict::fail, "eta lies in K, so eta/sigma(eta) = 1"};
  const TowerElem rho = eta / s;
  const TowerField& f = *eta.field();
  if (f.base().is_rational()) {
    if (real_embedding(f)) {
      bool pos = real_sign(rho) > 0;
      bool below = real_sign(TowerElem::from_rational(eta.field(), 1) - rho) > 0;
      if (pos && below) return {name, Verdict::pass, "0 < eta/sigma(eta) < 1 (exact real signs)"};
      return {name, Verdict::fail, "eta/sigma(eta) is real and outside (0, 1)"};
    }
    return {name, Verdict::pass, "|eta/sigma(eta)| = 1: sigma is complex conjugation"};
  }
  if (f.radicand_is_rational()) {
    TowerElem cc = complex_conj(rho);
    if (rho * cc == TowerElem::from_rational(eta.field(), 1))
      return {name, Verdict::pass, "|eta/sigma(eta)| = 1 (exact)"};
    if (!(cc == rho)) return {name, Verdict::fail, "eta/sigma(eta) is not real and not on the unit circle"};
    Interval v = embed(rho, prec).re();
    Verdict in = combine(greater(v, Interval(prec)), less(v, one(prec)));
    return {name, in, "eta/sigma(eta) is real; 0 < value < 1 decided from enclosures"};
  }
  Ball rb = embed(rho, prec);
  Interval mod = abs(rb);
  Verdict unit = overlaps(mod, one(prec)) ? Verdict::indeterminate : Verdict::fail;
  Verdict real = rb.im().contains_zero()
                     ? combine(Verdict::indeterminate, combine(greater(rb.re(), Interval(prec)), less(rb.re(), one(prec))))
                     : Verdict::fail;
  return {name, either(unit, real), "decided from enclosures"};
}

Theorem2Instance with_constants(Theorem2Instance inst, const Integer& d) {
  if (inst.C && inst.D) return inst;
  Calibration cal = calibrate_CD(inst.m, inst.n, d, inst.calibration_r_max, Rational(1, 100), inst.precision);
  inst.C = cal.C;
  inst.D = cal.D;
  inst.empirical = true;
  return inst;
}

namespace {

TowerElem exact_ratio(const Theorem2Instance& inst) {
  TowerElem rho = inst.eta / conj(inst.eta);
  if (inst.mu) rho *= *inst.mu;
  return rho;
}

// alpha is real over Q: sigma is complex conjugation (t < 0) or everything is real (t > 0, ratio > 0).
bool alpha_is_real(const Theorem2Instance& inst, const TowerElem& rho) {
  const TowerField& f = *inst.field;
  if (!f.base().is_rational()) return false;
  if ((rho + TowerElem::from_rational(inst.field, 1)).is_zero()) return false;
  if (f.radicand().a() < 0) {
    return rho * conj(rho) == TowerElem::from_rational(inst.field, 1);
  }
  return real_sign(rho) > 0;
}

}  // namespace

AlphaTheta alpha_theta(const Theorem2Instance& inst, Precision prec) {
  const TowerElem rho = exact_ratio(inst);
  Ball theta = principal_power(embed(rho, prec), inst.m, inst.n);
  Ball b = embed(inst.beta, prec), sb = embed(conj(inst.beta), prec);
  Ball g = embed(inst.gamma, prec), sg = embed(conj(inst.gamma), prec);
  Ball num = inst.sign > 0 ? b * theta + sb : b * theta - sb;
  Ball den = inst.sign > 0 ? g * theta + sg : g * theta - sg;
  if (den.contains_zero()) throw PrecisionError("alpha: denominator enclosure contains zero");
  Ball alpha = num / den;
  if (alpha_is_real(inst, rho)) {
    if (!alpha.im().contains_zero()) throw InvariantError("alpha should be real but its enclosure is not");
    alpha = Ball(alpha.re());
  }
  return {theta, alpha};
}

namespace {

enum class Route { general, unit_disk };

void exact_preconditions(const Theorem2Instance& inst, MeasureReport& rep) {
  const TowerElem& eta = inst.eta;
  rep.preconditions.push_back(exact_check("beta_alg_integer", is_alg_integer(inst.beta)));
  rep.preconditions.push_back(exact_check("gamma_alg_integer", is_alg_integer(inst.gamma)));
  rep.preconditions.push_back(exact_check("eta_alg_integer", is_alg_integer(eta)));
  rep.preconditions.push_back(exact_check("eta_not_in_K", !eta.in_base()));
  bool scaled = !eta.is_zero() && is_alg_integer_quotient(eta, inst.g) && is_alg_integer_quotient(conj(eta), inst.g);
  rep.preconditions.push_back(exact_check("eta_over_g_alg_integer", scaled, "g = " + inst.g.to_string()));
  bool outside = !(inst.beta * conj(inst.gamma) == conj(inst.beta) * inst.gamma);
  rep.preconditions.push_back(exact_check("beta_over_gamma_not_in_K", outside));
  if (!inst.field->base().is_rational())
    rep.preconditions.push_back(exact_check("tau_alg_integer", inst.field->radicand().is_alg_integer()));
  bool h_ok = true;
  for (unsigned long parity = 0; parity < 2; ++parity) {
    auto v = (inst.h_r(parity) / inst.g.pow(parity)).to_tower();
    h_ok = h_ok && v && v->in_base();
  }
  rep.preconditions.push_back(exact_check("h_r_over_g_r_in_K", h_ok));
  if (inst.sign != 1 && inst.sign != -1) throw DomainError("sign must be +1 or -1");
}

// |h_r| <= h, exactly when the coefficient is rational.
Precondition h_bound_check(const Theorem2Instance& inst, Precision prec) {
  Verdict v = Verdict::pass;
  for (unsigned long parity = 0; parity < 2; ++parity) {
    const ScaledRoot& hr = inst.h_r(parity);
    if (hr.coeff().is_rational()) {
      const Rational& c = hr.coeff().x().a();
      if (c * c * Rational(hr.radicand()) > inst.h_sq) v = Verdict::fail;
    } else {
      Interval b = sqr(hr.abs(prec));
      Interval h(inst.h_sq, prec);
      if (greater(b, h) == Verdict::pass) v = Verdict::fail;
      else if (v == Verdict::pass && less(b, h) != Verdict::pass && !b.is_point()) v = Verdict::indeterminate;
    }
  }
  return {"h_bounds_h_r", v, "h^2 = " + to_string(inst.h_sq)};
}

MeasureReport measure_at(const Theorem2Instance& inst, Route route, Precision prec) {
  MeasureReport rep;
  rep.method = route == Route::general ? "theorem2" : "theorem3";
  rep.precision = prec;
  rep.empirical = inst.empirical;
  exact_preconditions(inst, rep);
  if (route == Route::unit_disk)
    rep.preconditions.push_back(exact_check("base_imaginary_quadratic", !inst.field->base().is_rational()));

  rep.d = largest_d(inst.eta, inst.g);
  rep.N_dn = cal_N(rep.d, inst.n);
  rep.C = with_precision(*inst.C, prec);
  rep.D = with_precision(*inst.D, prec);
  // sigma(eta) = eta: E and Q are undefined.
  if (inst.eta.in_base()) return rep;

  const Ball e = embed(inst.eta, prec);
  const Ball s = embed(conj(inst.eta), prec);
  const Interval gabs = inst.g.abs(prec);
  const Interval Nval = rep.N_dn.value(prec);
  const Interval T = tau_abs(*inst.field, prec);
  const Interval h = sqrt(Interval(inst.h_sq, prec));

  rep.preconditions.push_back(h_bound_check(inst, prec));

  if (route == Route::general) {
    Ball S = e + s;
    Ball R = some_sqrt(e * s) * Interval(2L, prec);
    Interval a = abs(S + R), b = abs(S - R);
    Interval mn = min(a, b), mx = max(a, b);
    if (mn.contains_zero()) throw PrecisionError("theorem2: min |sqrt eta -+ sqrt sigma(eta)|^2 not separated from 0");
    Interval factor = rep.D / (gabs * Nval);
    rep.E = one(prec) / (factor * mn);
    rep.Q = factor * mx;
    rep.provenance["E"] = "(D_n / (|g| N_dn) * min|eta + sigma(eta) -+ 2 sqrt(eta sigma(eta))|)^-1";
    rep.provenance["Q"] = "D_n / (|g| N_dn) * max|eta + sigma(eta) -+ 2 sqrt(eta sigma(eta))|";
  } else {
    Interval diff = abs(s - e);
    if (diff.contains_zero()) throw PrecisionError("theorem3: |sigma(eta) - eta| not separated from 0");
    rep.E = Interval(4L, prec) * gabs * Nval / rep.D * (abs(e) - diff) / sqr(diff);
    rep.Q = Interval(2L, prec) * rep.D / (gabs * Nval) * (abs(e) + abs(s));
    rep.provenance["E"] = "4 |g| N_dn / D_n * (|eta| - |sigma(eta) - eta|) / |sigma(eta) - eta|^2";
    rep.provenance["Q"] = "2 D_n / (|g| N_dn) * (|eta| + |sigma(eta)|)";
  }
  rep.provenance["d"] = "largest integer d with (sigma(eta) - eta)/(d g) an algebraic integer";
  rep.provenance["N_dn"] = "prod_{p | n} p^min(v_p(d), v_p(n) + 1/(p-1))";
  rep.provenance["kappa"] = "log Q / log E";
  rep.provenance["alpha"] = "(beta theta +- sigma(beta)) / (gamma theta +- sigma(gamma)), theta = (eta/sigma(eta))^(m/n)";
  rep.provenance["theta"] = "(eta/sigma(eta))^(m/n), principal branch";
  rep.provenance["C"] = inst.empirical ? "empirical calibration" : "supplied";
  rep.provenance["D"] = inst.empirical ? "empirical calibration" : "supplied";
  rep.provenance["k0"] = "2 h C_n";

  AlphaTheta at = alpha_theta(inst, prec);
  rep.alpha = at.alpha;
  rep.theta = at.theta;
  Interval one_minus = abs(Ball(one(prec)) - at.theta);
  rep.k0 = Interval(2L, prec) * h * rep.C;
  if (route == Route::general) {
    rep.l0 = Interval(Rational(119, 50), prec) * h * one_minus * rep.C;
    rep.provenance["l0"] = "2.38 h |1 - theta| C_n";
    rep.provenance["c"] = "4 h |sqrt tau| (|gamma| + |sigma(gamma)|) C_n Q max{E, 5 h |sqrt tau| |1 - theta| |beta - alpha gamma| C_n E}^kappa";
  } else {
    rep.l0 = h * one_minus * rep.C;
    rep.provenance["l0"] = "h |1 - theta| C_n";
    rep.provenance["c"] = "4 h |sqrt tau| (|gamma| + |sigma(gamma)|) C_n Q max{E, 2 h |sqrt tau| |1 - theta| |beta - alpha gamma| C_n E}^kappa";
  }

  numeric_gates(rep);
  if (route == Route::general) {
    rep.preconditions.push_back(ratio_condition(inst.eta, prec));
  } else {
    Ball rho = e / s;
    Interval a = abs(Ball(one(prec)) - rho);
    Interval b = abs(Ball(one(prec)) - s / e);
    rep.preconditions.push_back({"unit_disk_condition", less(max(a, b), one(prec)),
                                 "max(|1 - eta/sigma(eta)|, |1 - sigma(eta)/eta|) = " + to_string(max(a, b))});
  }
  if (!gates_pass(rep)) return rep;

  rep.kappa = kappa(rep.E, rep.Q);
  const Ball b = embed(inst.beta, prec), g = embed(inst.gamma, prec);
  Interval front = Interval(4L, prec) * h * T * (abs(g) + abs(embed(conj(inst.gamma), prec))) * rep.C * rep.Q;
  Interval coeff = route == Route::general ? Interval(5L, prec) : Interval(2L, prec);
  Interval inner = coeff * h * T * one_minus * abs(b - rep.alpha * g) * rep.C * rep.E;
  rep.c = c_shape(front, rep.E, inner, rep.kappa);
  return rep;
}

MeasureReport escalate_measure(const Theorem2Instance& raw, Route route) {
  Theorem2Instance inst = with_constants(raw, largest_d(raw.eta, raw.g));
  for (Precision p = inst.precision;; p *= 2) {
    try {
      MeasureReport rep = measure_at(inst, route, p);
      if (!any_indeterminate(rep) || p * 2 > kMaxPrecision) return rep;
    } catch (const PrecisionError& err) {
      if (p * 2 > kMaxPrecision) throw;
    }
  }
}

}  // namespace

MeasureReport theorem2(const Theorem2Instance& inst) { return escalate_measure(inst, Route::general); }

MeasureReport theorem3(const Theorem2Instance& inst) { return escalate_measure(inst, Route::unit_disk); }

// --------------------------------------------------------------------------

CorollaryChain corollary_chain(const Integer& u1, const Integer& u2, const Integer& t, unsigned long n) {
  if (t == 0 || u2 == 0) throw DomainError("corollary: need t != 0 and u2 != 0");
  if (exact_sqrt(t)) throw DomainError("corollary: t must not be a perfect square");
  if (n < 2) throw DomainError("corollary: n must be at least 2");
  const BaseField Q;
  FieldPtr field = TowerField::make(Q, BaseElem::rational(Q, Rational(t)));
  // sqrt(t) = scale * sqrt(core(t)) with scale a positive integer.
  const Integer ct = core(t);
  const Integer scale = *exact_sqrt(Integer(t / ct));
  TowerElem root_t = TowerElem::root(field) * Rational(scale);

  CorollaryChain ch{field, (TowerElem::from_rational(field, Rational(u1)) + root_t * Rational(u2)) * Rational(1, 2),
                    0, 0, 0, 0, 0, 0, 0, ScaledRoot::one(field), 1};
  ch.g1 = gcd(u1, u2);
  ch.g2 = gcd(Integer(u1 / ch.g1), t);
  const Integer parity = mod(Integer((u1 - u2) / ch.g1), 2);
  const Integer t4 = mod(t, 4);
  if (t4 == 1 && parity == 0)
    ch.g3 = 1;
  else if (t4 == 3 && parity == 0)
    ch.g3 = 2;
  else
    ch.g3 = 4;
  ch.core_tg2g3 = core(Integer(t * ch.g2 * ch.g3));
  Integer quot = t * ch.g3 / ch.g2;
  if (quot % ch.core_tg2g3 != 0) throw InvariantError("corollary: t g3 / g2 not divisible by its core");
  auto sq = exact_sqrt(Integer(quot / ch.core_tg2g3));
  if (!sq) throw InvariantError("corollary: t g3 / g2 / core(t g2 g3) is not a perfect square");
  ch.d1 = abs(u2) / ch.g1 * *sq;
  const Integer nn(n);
  ch.g4 = gcd(abs(ch.core_tg2g3), Integer(nn / gcd(ch.d1, nn)));
  ch.g5 = 1;
  if (n % 2 == 0) {
    Rational M = Rational(u2 * u2 * t * ch.g3) / Rational(ch.g1 * ch.g1 * ch.g2);
    if (val_p(Integer(2), M) == val_p(Integer(2), Integer(2 * nn * nn))) ch.g5 = 2;
  }
  ch.g = ScaledRoot(TowerElem::from_rational(field, Rational(ch.g1)), ratio(ch.g2, ch.g3 * ch.g4 * ch.g5));
  // d: largest d with d^2 | u2^2 t g3 g4 g5 / (g1^2 g2).
  Rational M = Rational(u2 * u2 * abs(t) * ch.g3 * ch.g4 * ch.g5) / Rational(ch.g1 * ch.g1 * ch.g2);
  M.canonicalize();
  ch.d = 1;
  if (is_integer(M))
    for (const auto& pp : factor(Integer(M.get_num()))) ch.d *= pow(pp.prime, pp.exponent / 2);
  Integer generic = largest_d(ch.eta, ch.g);
  if (generic != ch.d)
    throw InvariantError("corollary: d from the u2^2 t route (" + ch.d.get_str() + ") disagrees with the generic search (" +
                         generic.get_str() + ")");
  return ch;
}

CorollaryChain corollary_chain(const CorollaryInstance& inst) {
  return corollary_chain(inst.u1, inst.u2, inst.t, inst.n);
}

HTerm h_sequence(const CorollaryChain& ch, const Integer& t, unsigned long r, Precision prec) {
  ScaledRoot hr = ScaledRoot::one(ch.field);
  if (r % 2 == 1) {
    Integer c = core(Integer(ch.g2 * ch.g3 * ch.g4 * ch.g5));
    hr = ScaledRoot(TowerElem::from_rational(ch.field, 1), Rational(c));
  }
  ScaledRoot q = hr / ch.g.pow(r);
  auto v = q.to_tower();
  if (!v || !v->is_rational()) throw InvariantError("h_sequence: h_r / g^r is not rational");
  if (hr.radicand() > 2 * abs(t)) throw InvariantError("h_sequence: |h_r| exceeds sqrt|2t|");
  return {hr, sqrt(Interval(Integer(2 * abs(t)), prec)), v->x().a()};
}

namespace {

// beta = 1, gamma = sqrt(t) unless given.
std::pair<TowerElem, TowerElem> default_beta_gamma(const CorollaryInstance& inst, const FieldPtr& field) {
  TowerElem beta = inst.beta ? *inst.beta : TowerElem::from_rational(field, 1);
  TowerElem gamma = inst.gamma ? *inst.gamma : TowerElem::root(field) * Rational(*exact_sqrt(Integer(inst.t / core(inst.t))));
  if (!(*beta.field() == *field) || !(*gamma.field() == *field))
    throw DomainError("corollary: beta and gamma must lie in Q(sqrt t)");
  return {TowerElem(field, beta.x(), beta.y()), TowerElem(field, gamma.x(), gamma.y())};
}

}  // namespace

Theorem2Instance to_theorem2(const CorollaryInstance& inst, const CorollaryChain& ch) {
  auto [beta, gamma] = default_beta_gamma(inst, ch.field);
  const Rational lambda = is_alg_integer(ch.eta) ? Rational(1) : Rational(2);
  TowerElem eta = ch.eta * lambda;
  ScaledRoot g(ch.g.coeff() * lambda, Rational(ch.g.radicand()));
  Theorem2Instance out = Theorem2Instance::make(ch.field, beta, gamma, eta, inst.m, inst.n, inst.sign, g);
  out.h_odd = h_sequence(ch, inst.t, 1).h_r;
  out.h_sq = Rational(2 * abs(inst.t));
  out.C = inst.C;
  out.D = inst.D;
  out.calibration_r_max = inst.calibration_r_max;
  out.precision = inst.precision;
  return out;
}

MeasureReport corollary1(const CorollaryInstance& inst) {
  require_exponent(inst.m, inst.n);
  const CorollaryChain ch = corollary_chain(inst);
  Theorem2Instance base = with_constants(to_theorem2(inst, ch), ch.d);
  const Interval disc_check(Integer(inst.u1 * inst.u1 - inst.u2 * inst.u2 * inst.t), 64);
  if (inst.u1 * inst.u1 == inst.u2 * inst.u2 * inst.t) throw DomainError("corollary: u1^2 = u2^2 t is degenerate");

  for (Precision p = inst.precision;; p *= 2) {
    try {
      MeasureReport rep;
      rep.method = "corollary1";
      rep.precision = p;
      rep.empirical = base.empirical;
      rep.d = ch.d;
      rep.N_dn = cal_N(ch.d, inst.n);
      rep.C = with_precision(*base.C, p);
      rep.D = with_precision(*base.D, p);
      exact_preconditions(base, rep);
      for (auto& pc : rep.preconditions)
        if (pc.name == "eta_alg_integer" && !is_alg_integer(ch.eta))
          pc.detail = "eta not integral; using 2 eta and 2 g, which leaves every constant unchanged";

      const Ball S(Interval(inst.u1, p));
      Ball root = some_sqrt(Ball(Interval(Integer(inst.u1 * inst.u1 - inst.u2 * inst.u2 * inst.t), p)));
      Interval a = abs(S + root), b = abs(S - root);
      Interval mn = min(a, b), mx = max(a, b);
      if (mn.contains_zero()) throw PrecisionError("corollary: min |u1 -+ sqrt(u1^2 - u2^2 t)| not separated from 0");
      const Interval gabs = ch.g.abs(p);
      const Interval Nval = rep.N_dn.value(p);
      rep.E = gabs * Nval / (rep.D * mn);
      rep.Q = rep.D * mx / (gabs * Nval);
      const Interval h = sqrt(Interval(Integer(2 * abs(inst.t)), p));

      AlphaTheta at = alpha_theta(base, p);
      rep.alpha = at.alpha;
      rep.theta = at.theta;
      Interval one_minus = abs(Ball(one(p)) - at.theta);
      rep.k0 = Interval(2L, p) * h * rep.C;
      rep.l0 = Interval(Rational(119, 50), p) * h * one_minus * rep.C;
      rep.provenance["E"] = "|g| N_dn / (D_n min|u1 -+ sqrt(u1^2 - u2^2 t)|)";
      rep.provenance["Q"] = "D_n max|u1 -+ sqrt(u1^2 - u2^2 t)| / (|g| N_dn)";
      rep.provenance["g"] = "g1 sqrt(g2) / sqrt(g3 g4 g5)";
      rep.provenance["d"] = "largest integer d with u2 sqrt(t)/(d g) an algebraic integer";
      rep.provenance["N_dn"] = "prod_{p | n} p^min(v_p(d), v_p(n) + 1/(p-1))";
      rep.provenance["kappa"] = "log Q / log E";
      rep.provenance["c"] = "4 sqrt|2t| (|gamma| + |sigma(gamma)|) C_n Q max(E, 5 sqrt|2t| |1 - theta| |beta - alpha gamma| C_n E)^kappa";
      rep.provenance["alpha"] = "(beta theta +- sigma(beta)) / (gamma theta +- sigma(gamma)), theta = (eta/sigma(eta))^(m/n)";
      rep.provenance["theta"] = "(eta/sigma(eta))^(m/n), principal branch";
      rep.provenance["C"] = base.empirical ? "empirical calibration" : "supplied";
      rep.provenance["D"] = base.empirical ? "empirical calibration" : "supplied";
      rep.provenance["k0"] = "2 h C_n";
      rep.provenance["l0"] = "2.38 h |1 - theta| C_n";

      numeric_gates(rep);
      rep.preconditions.push_back(ratio_condition(ch.eta, p));
      if (gates_pass(rep)) {
        rep.kappa = kappa(rep.E, rep.Q);
        const Ball bb = embed(base.beta, p), gg = embed(base.gamma, p);
        Interval front = Interval(4L, p) * h * (abs(gg) + abs(embed(conj(base.gamma), p))) * rep.C * rep.Q;
        Interval inner = Interval(5L, p) * h * one_minus * abs(bb - rep.alpha * gg) * rep.C * rep.E;
        rep.c = c_shape(front, rep.E, inner, rep.kappa);
      }
      if (!any_indeterminate(rep) || p * 2 > kMaxPrecision) return rep;
    } catch (const PrecisionError&) {
      if (p * 2 > kMaxPrecision) throw;
    }
  }
}

// --------------------------------------------------------------------------

MuKind parse_mu_kind(const std::string& s) {
  if (s == "-1" || s == "minus_one") return MuKind::minus_one;
  if (s == "i") return MuKind::i;
  if (s == "zeta3") return MuKind::zeta3;
  if (s == "zeta6") return MuKind::zeta6;
  throw DomainError("unknown mu kind '" + s + "' (expected -1, i, zeta3, zeta6)");
}

std::string to_string(MuKind k) {
  switch (k) {
    case MuKind::minus_one: return "-1";
    case MuKind::i: return "i";
    case MuKind::zeta3: return "zeta3";
    case MuKind::zeta6: return "zeta6";
  }
  return "?";
}

MuAbsorption mu_absorb(const FieldPtr& field, MuKind kind) {
  const BaseField& K = field->base();
  auto root_outside_K = [&](long a) -> TowerElem {
    auto s = sqrt_in_tower(field, BaseElem::rational(K, Rational(a)));
    if (!s || s->in_base())
      throw DomainError("mu_absorb: sqrt(" + std::to_string(a) + ") must lie in L but not in K");
    return *s;
  };
  TowerElem nu(field);
  std::string note;
  switch (kind) {
    case MuKind::minus_one:
      nu = TowerElem::root(field);
      note = "eta' = sqrt(tau) eta; g grows by the same factor";
      break;
    case MuKind::i:
      nu = TowerElem::from_rational(field, 1) + root_outside_K(-1);
      note = "eta' = (1 + i) eta; g grows by the same factor";
      break;
    case MuKind::zeta3:
      nu = (TowerElem::from_rational(field, 1) - root_outside_K(-3)) * Rational(1, 2);
      note = "eta' = (1 - sqrt(-3)) eta / 2; g grows by the same factor";
      break;
    case MuKind::zeta6:
      nu = TowerElem::from_rational(field, 3) + root_outside_K(-3);
      note = "eta' = (3 + sqrt(-3)) eta; g grows by the same factor";
      break;
  }
  return {field, nu, nu / conj(nu), note};
}

MuAbsorption mu_absorb(const BaseField& base, const BaseElem& tau, MuKind kind) {
  return mu_absorb(TowerField::make(base, tau), kind);
}

}  // namespace irrmeasure

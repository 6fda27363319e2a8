#include "irrmeasure_cli/json_io.hpp"

namespace irrmeasure::cli {

json to_json(const Interval& x) { return to_string(x); }
json to_json(const Ball& z) { return to_string(z); }
json to_json(const Rational& q) { return to_string(q); }
json to_json(const Integer& n) { return n.get_str(); }
json to_json(const BaseElem& e) { return e.to_string(); }

json to_json(const TowerElem& e) {
  return {{"exact", e.to_string()},
          {"coordinates", {{to_string(e.x().a()), to_string(e.x().b())}, {to_string(e.y().a()), to_string(e.y().b())}}}};
}

json to_json(const ScaledRoot& s) {
  return {{"exact", s.to_string()}, {"coeff", to_json(s.coeff())}, {"radicand", s.radicand().get_str()}};
}

json to_json(const ValuationProduct& v) {
  json factors = json::array();
  for (const auto& f : v.factors) factors.push_back({{"prime", f.prime.get_str()}, {"exponent", to_string(f.exponent)}});
  json out = {{"exact", v.to_string()}, {"factors", factors}, {"value", to_json(v.value(128))}};
  if (auto e = v.exact()) out["integer"] = e->get_str();
  return out;
}

json to_json(const MeasureReport& rep) {
  json pre = json::array();
  for (const auto& p : rep.preconditions)
    pre.push_back({{"name", p.name}, {"verdict", to_string(p.verdict)}, {"detail", p.detail}});
  json out = {{"method", rep.method},
              {"alpha", to_json(rep.alpha)},
              {"theta", to_json(rep.theta)},
              {"E", to_json(rep.E)},
              {"Q", to_json(rep.Q)},
              {"k0", to_json(rep.k0)},
              {"l0", to_json(rep.l0)},
              {"d", to_json(rep.d)},
              {"N_dn", to_json(rep.N_dn)},
              {"C", to_json(rep.C)},
              {"D", to_json(rep.D)},
              {"empirical", rep.empirical},
              {"preconditions", pre},
              {"provenance", rep.provenance},
              {"precision", rep.precision},
              {"ok", rep.ok()}};
  if (rep.ok()) {
    out["kappa"] = to_json(rep.kappa);
    out["c"] = to_json(rep.c);
  } else {
    out["kappa"] = nullptr;
    out["c"] = nullptr;
    out["failed_precondition"] = rep.first_failure()->name;
  }
  return out;
}

json to_json(const CorollaryChain& ch) {
  return {{"eta", to_json(ch.eta)},          {"g1", to_json(ch.g1)}, {"g2", to_json(ch.g2)},
          {"g3", to_json(ch.g3)},            {"g4", to_json(ch.g4)}, {"g5", to_json(ch.g5)},
          {"core_tg2g3", to_json(ch.core_tg2g3)}, {"d1", to_json(ch.d1)}, {"g", to_json(ch.g)},
          {"d", to_json(ch.d)}};
}

json to_json(const GrowthReport& g) {
  json rows = json::array();
  for (const auto& r : g.rows)
    rows.push_back({{"r", r.r},
                    {"q_abs", to_json(r.q_abs)},
                    {"q_bound", to_json(r.q_bound)},
                    {"q_ok", to_string(r.q_ok)},
                    {"err_abs", to_json(r.err_abs)},
                    {"err_bound", to_json(r.err_bound)},
                    {"err_ok", to_string(r.err_ok)},
                    {"residual", to_json(r.residual)},
                    {"det_nonzero", r.det_nonzero}});
  return {{"rows", rows},
          {"fit_range", {g.fit_lo, g.fit_hi}},
          {"q_slope", to_json(g.q_slope)},
          {"err_slope", to_json(g.err_slope)},
          {"log_Q", to_json(g.log_Q)},
          {"log_E", to_json(g.log_E)},
          {"q_rate_within_5pct", to_string(g.q_rate)},
          {"err_rate_within_5pct", to_string(g.err_rate)},
          {"monotone_tail", g.monotone_tail},
          {"monotone_residual", g.monotone_residual},
          {"failures", g.failures},
          {"degenerate", g.degenerate},
          {"precision", g.precision},
          {"pass", g.pass()}};
}

json to_json(const ScanResult& s) {
  json undecided = json::array();
  for (const auto& q : s.undecided) undecided.push_back(to_json(q));
  return {{"q_max", to_json(s.q_max)},       {"worst_q", to_json(s.worst_q)},
          {"worst_p", to_json(s.worst_p)},   {"worst_margin", to_json(s.worst_margin)},
          {"verdict", to_string(s.verdict)}, {"scanned", s.scanned},
          {"undecided", undecided},          {"pass", s.pass()}};
}

json to_json(const BoundReport& b) {
  json rows = json::array();
  for (const auto& r : b.rows)
    rows.push_back({{"r", r.r}, {"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)}, {"verdict", to_string(r.verdict)}});
  return {{"rows", rows}, {"failures", b.failures}, {"indeterminate", b.indeterminate}, {"pass", b.pass()}};
}

json to_json(const Calibration& c) {
  return {{"C", to_json(c.C)},
          {"D", to_json(c.D)},
          {"C_exact", to_json(c.C.upper_q())},
          {"D_exact", to_json(c.D.upper_q())},
          {"r_max", c.r_max},
          {"margin", to_json(c.margin)},
          {"empirical", c.empirical}};
}

// --------------------------------------------------------------------------

namespace {

std::string text_of(const json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ConfigError(what + ": expected a string or an integer");
}

}  // namespace

Rational rational_from(const json& j, const std::string& what) {
  try {
    return parse_rational(text_of(j, what));
  } catch (const DomainError& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

Integer integer_from(const json& j, const std::string& what) {
  Rational q = rational_from(j, what);
  if (!is_integer(q)) throw ConfigError(what + ": expected an integer");
  return q.get_num();
}

Rational decimal_from(const json& j, const std::string& what) {
  try {
    return parse_decimal(text_of(j, what));
  } catch (const DomainError& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

BaseElem base_from(const json& j, const BaseField& K, const std::string& what) {
  if (j.is_array()) {
    if (j.size() != 2) throw ConfigError(what + ": expected [a, b]");
    try {
      return BaseElem(K, rational_from(j[0], what), rational_from(j[1], what));
    } catch (const DomainError& e) {
      throw ConfigError(what + ": " + e.what());
    }
  }
  return BaseElem::rational(K, rational_from(j, what));
}

TowerElem tower_from(const json& j, const FieldPtr& L, const std::string& what) {
  if (j.is_array()) {
    if (j.size() != 2) throw ConfigError(what + ": expected [x, y]");
    return TowerElem(L, base_from(j[0], L->base(), what), base_from(j[1], L->base(), what));
  }
  return TowerElem::from_rational(L, rational_from(j, what));
}

}  // namespace irrmeasure::cli

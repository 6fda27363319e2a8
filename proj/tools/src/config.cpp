#include "irrmeasure_cli/config.hpp"

#include <fstream>
#include <set>

namespace irrmeasure::cli {

namespace {

const std::set<std::string> kModes = {"theorem2", "theorem3", "corollary1"};
const std::set<std::string> kKeys = {"mode", "field", "eta", "beta", "gamma", "g", "m", "n", "sign",
                                     "C", "D", "h_sq", "h_odd", "h_even", "mu", "absorb_mu",
                                     "precision", "calibration_r_max"};

unsigned long unsigned_from(const json& j, const std::string& what) {
  Integer v = integer_from(j, what);
  if (v < 0 || !v.fits_ulong_p()) throw ConfigError(what + ": expected a non-negative integer");
  return v.get_ui();
}

ScaledRoot scaled_from(const json& j, const FieldPtr& L, const std::string& what) {
  if (!j.is_object()) return ScaledRoot(tower_from(j, L, what));
  for (const auto& [k, v] : j.items())
    if (k != "coeff" && k != "radicand") throw ConfigError(what + ": unknown key '" + k + "'");
  TowerElem coeff = j.contains("coeff") ? tower_from(j["coeff"], L, what + ".coeff") : TowerElem::from_rational(L, 1);
  Rational rad = j.contains("radicand") ? rational_from(j["radicand"], what + ".radicand") : Rational(1);
  if (rad <= 0) throw ConfigError(what + ".radicand: must be positive");
  return ScaledRoot(coeff, rad);
}

std::optional<Interval> constant_from(const json& j, const char* key, Precision prec) {
  if (!j.contains(key)) return std::nullopt;
  Rational v = decimal_from(j[key], key);
  if (v <= 0) throw ConfigError(std::string(key) + ": must be positive");
  return Interval(v, prec);
}

}  // namespace

InstanceConfig parse_instance(const json& j, const std::optional<std::string>& mode_override,
                              std::optional<Precision> precision_override) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  for (const auto& [k, v] : j.items())
    if (!kKeys.count(k)) throw ConfigError("config: unknown key '" + k + "'");
  if (!j.contains("eta")) throw ConfigError("config: missing 'eta'");
  const bool corollary_form = j["eta"].is_object();

  InstanceConfig cfg;
  cfg.echo = j;
  if (mode_override) {
    cfg.mode = *mode_override;
  } else if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw ConfigError("mode: expected a string");
    cfg.mode = j["mode"].get<std::string>();
  } else {
    cfg.mode = corollary_form ? "corollary1" : "theorem2";
  }
  if (!kModes.count(cfg.mode)) throw ConfigError("mode: expected theorem2, theorem3 or corollary1");
  if (cfg.mode == "corollary1" && !corollary_form)
    throw ConfigError("mode corollary1 needs eta given as {u1, u2, t}");
  cfg.echo["mode"] = cfg.mode;

  Precision prec = 256;
  if (precision_override) {
    prec = *precision_override;
  } else if (j.contains("precision")) {
    prec = unsigned_from(j["precision"], "precision");
  }
  if (prec < 32 || prec > kMaxPrecision) throw ConfigError("precision: must lie in [32, 65536]");
  cfg.echo["precision"] = prec;

  if (!j.contains("n")) throw ConfigError("config: missing 'n'");
  const unsigned long n = unsigned_from(j["n"], "n");
  const unsigned long m = j.contains("m") ? unsigned_from(j["m"], "m") : 1;
  try {
    require_exponent(m, n);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("m, n: ") + e.what());
  }
  int sign = 1;
  if (j.contains("sign")) {
    Integer s = integer_from(j["sign"], "sign");
    if (s != 1 && s != -1) throw ConfigError("sign: expected 1 or -1");
    sign = static_cast<int>(s.get_si());
  }
  const auto C = constant_from(j, "C", prec);
  const auto D = constant_from(j, "D", prec);
  if (C.has_value() != D.has_value()) throw ConfigError("C, D: give both or neither");
  const unsigned long cal_r = j.contains("calibration_r_max") ? unsigned_from(j["calibration_r_max"], "calibration_r_max") : 200;
  if (cal_r < 1) throw ConfigError("calibration_r_max: must be at least 1");

  try {
    if (corollary_form) {
      const json& e = j["eta"];
      for (const auto& [k, v] : e.items())
        if (k != "u1" && k != "u2" && k != "t") throw ConfigError("eta: unknown key '" + k + "'");
      if (!e.contains("u1") || !e.contains("u2") || !e.contains("t")) throw ConfigError("eta: need u1, u2 and t");
      for (const char* k : {"field", "g", "h_sq", "h_odd", "h_even", "mu", "absorb_mu"})
        if (j.contains(k)) throw ConfigError(std::string(k) + ": not used with eta = {u1, u2, t}");
      CorollaryInstance ci{integer_from(e["u1"], "eta.u1"), integer_from(e["u2"], "eta.u2"), integer_from(e["t"], "eta.t"),
                           m, n, std::nullopt, std::nullopt, sign, C, D, cal_r, prec};
      if (j.contains("beta") || j.contains("gamma")) {
        if (ci.t == 0 || exact_sqrt(ci.t)) throw ConfigError("eta.t: must not be zero or a perfect square");
        FieldPtr L = TowerField::make(BaseField(), BaseElem::rational(BaseField(), Rational(ci.t)));
        if (j.contains("beta")) ci.beta = tower_from(j["beta"], L, "beta");
        if (j.contains("gamma")) ci.gamma = tower_from(j["gamma"], L, "gamma");
      }
      cfg.chain = corollary_chain(ci);
      cfg.corollary = ci;
      cfg.theorem = to_theorem2(ci, *cfg.chain);
      return cfg;
    }

    if (!j.contains("field") || !j["field"].is_object()) throw ConfigError("field: expected {disc, tau}");
    const json& fj = j["field"];
    for (const auto& [k, v] : fj.items())
      if (k != "disc" && k != "tau") throw ConfigError("field: unknown key '" + k + "'");
    if (!fj.contains("tau")) throw ConfigError("field: missing 'tau'");
    const BaseField K(fj.contains("disc") ? integer_from(fj["disc"], "field.disc") : Integer(0));
    const FieldPtr L = TowerField::make(K, base_from(fj["tau"], K, "field.tau"));
    TowerElem eta = tower_from(j["eta"], L, "eta");
    TowerElem beta = j.contains("beta") ? tower_from(j["beta"], L, "beta") : TowerElem::from_rational(L, 1);
    TowerElem gamma = j.contains("gamma") ? tower_from(j["gamma"], L, "gamma") : TowerElem::root(L);
    ScaledRoot g = j.contains("g") ? scaled_from(j["g"], L, "g") : ScaledRoot::one(L);
    std::optional<TowerElem> mu;
    if (j.contains("mu")) {
      if (!j["mu"].is_string()) throw ConfigError("mu: expected -1, i, zeta3 or zeta6");
      MuAbsorption a = mu_absorb(L, parse_mu_kind(j["mu"].get<std::string>()));
      const bool absorb = j.contains("absorb_mu") && j["absorb_mu"].is_boolean() && j["absorb_mu"].get<bool>();
      if (absorb) {
        eta *= a.nu;
        g *= a.nu;
      } else {
        mu = a.mu;
      }
    } else if (j.contains("absorb_mu")) {
      throw ConfigError("absorb_mu: needs mu");
    }
    Theorem2Instance inst = Theorem2Instance::make(L, beta, gamma, eta, m, n, sign, g);
    if (j.contains("h_even")) inst.h_even = scaled_from(j["h_even"], L, "h_even");
    if (j.contains("h_odd")) inst.h_odd = scaled_from(j["h_odd"], L, "h_odd");
    if (j.contains("h_sq")) inst.h_sq = rational_from(j["h_sq"], "h_sq");
    if (inst.h_sq <= 0) throw ConfigError("h_sq: must be positive");
    inst.C = C;
    inst.D = D;
    inst.calibration_r_max = cal_r;
    inst.mu = mu;
    inst.precision = prec;
    cfg.theorem = inst;
    return cfg;
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

InstanceConfig load_instance(const std::string& path, const std::optional<std::string>& mode_override,
                             std::optional<Precision> precision_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_instance(j, mode_override, precision_override);
}

MeasureReport run_measure(const InstanceConfig& cfg, Precision prec) {
  if (cfg.mode == "corollary1") {
    CorollaryInstance ci = *cfg.corollary;
    ci.precision = prec;
    return corollary1(ci);
  }
  Theorem2Instance inst = *cfg.theorem;
  inst.precision = prec;
  return cfg.mode == "theorem3" ? theorem3(inst) : theorem2(inst);
}

Theorem2Instance resolved_theorem(const InstanceConfig& cfg) {
  const Integer d = cfg.chain ? cfg.chain->d : largest_d(cfg.theorem->eta, cfg.theorem->g);
  return with_constants(*cfg.theorem, d);
}

}  // namespace irrmeasure::cli

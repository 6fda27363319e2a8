#include "irrmeasure_cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <tuple>

#include "irrmeasure_cli/config.hpp"

#ifndef IRRMEASURE_VERSION
#define IRRMEASURE_VERSION "0.0.0"
#endif

namespace irrmeasure::cli {

const char* version() { return IRRMEASURE_VERSION; }

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<Precision> precision;
  std::optional<std::string> mode;
  unsigned long m = 1, n = 3, r = 2;
  std::optional<unsigned long> r_max;
  std::optional<std::string> d;
  unsigned long q_max = 1000;
  unsigned long u1_max = 200, u2_max = 1;
  long t_min = -3, t_max = -3;
  std::vector<unsigned long> n_set{3};
  unsigned long limit = 0;
};

json envelope(const std::string& command) { return {{"version", version()}, {"command", command}}; }

CommandResult start(const std::string& command, int code = kOk) {
  CommandResult res;
  res.exit_code = code;
  res.report = envelope(command);
  return res;
}

Integer d_or(const Flags& f, unsigned long fallback) {
  if (!f.d) return Integer(fallback);
  Rational q = rational_from(json(*f.d), "--d");
  if (!is_integer(q) || q < 1) throw ConfigError("--d: expected a positive integer");
  return q.get_num();
}

CommandResult cmd_poly(const Flags& f) {
  CommandResult res = start("poly");
  require_exponent(f.m, f.n);
  const Integer d = d_or(f, f.n);
  HypPoly p = x_coeffs(f.m, f.n, f.r);
  json coeffs = json::array();
  for (const auto& c : p.coeffs) coeffs.push_back(to_json(c));
  res.report["m"] = f.m;
  res.report["n"] = f.n;
  res.report["r"] = f.r;
  res.report["coefficients"] = coeffs;
  res.report["D"] = to_json(denom_D(p));
  res.report["N"] = {{"d", to_json(d)}, {"value", to_json(numer_N(p, d))}};
  res.report["provenance"] = {{"coefficients", "2F1(-r, -r - m/n; 1 - m/n; x), coefficient of x^k"},
                              {"D", "least common denominator of the coefficients"},
                              {"N", "gcd-based content of D X(1 - d x) coefficients"}};
  return res;
}

CommandResult cmd_constants(const Flags& f) {
  CommandResult res = start("constants");
  require_exponent(f.m, f.n);
  const Integer d = d_or(f, f.n);
  const unsigned long r_max = f.r_max.value_or(10);
  json rows = json::array();
  const auto lhs = cd_left_sides(f.m, f.n, d, r_max);
  for (unsigned long r = 0; r <= r_max; ++r) {
    InvariantPair inv = invariants(f.m, f.n, d, r);
    GammaRatios g = gamma_ratio_bounds(f.m, f.n, r);
    rows.push_back({{"r", r},
                    {"D", to_json(inv.D)},
                    {"N", to_json(inv.N)},
                    {"gamma_lower", to_json(g.lower)},
                    {"gamma_upper", to_json(g.upper)},
                    {"lhs", to_json(lhs[r])}});
  }
  res.report["m"] = f.m;
  res.report["n"] = f.n;
  res.report["d"] = to_json(d);
  res.report["cal_N"] = to_json(cal_N(d, f.n));
  res.report["rows"] = rows;
  res.report["provenance"] = {{"gamma_lower", "Gamma(1-m/n) r! / Gamma(r+1-m/n), telescoped exactly"},
                              {"gamma_upper", "n Gamma(r+1+m/n) / (m Gamma(m/n) r!), telescoped exactly"},
                              {"lhs", "max(1, gamma_lower, gamma_upper) D / N"},
                              {"cal_N", "prod_{p | n} p^min(v_p(d), v_p(n) + 1/(p-1))"}};
  return res;
}

CommandResult cmd_calibrate(const Flags& f) {
  CommandResult res = start("calibrate");
  require_exponent(f.m, f.n);
  const Integer d = d_or(f, f.n);
  const unsigned long r_max = f.r_max.value_or(200);
  Calibration cal = calibrate_CD(f.m, f.n, d, r_max);
  BoundReport chk = check_CD_bound(f.m, f.n, d, cal.C, cal.D, r_max);
  res.report["m"] = f.m;
  res.report["n"] = f.n;
  res.report["d"] = to_json(d);
  res.report["calibration"] = to_json(cal);
  res.report["check"] = {{"pass", chk.pass()}, {"failures", chk.failures}, {"indeterminate", chk.indeterminate}};
  res.report["empirical"] = true;
  res.report["provenance"] = {{"C", "empirical calibration"}, {"D", "empirical calibration"}};
  if (!chk.pass()) res.exit_code = kVerification;
  return res;
}

InstanceConfig need_config(const Flags& f) {
  if (f.config.empty()) throw ConfigError("--config is required");
  return load_instance(f.config, f.mode, f.precision);
}

void add_instance(json& out, const InstanceConfig& cfg) {
  out["instance"] = cfg.echo;
  if (cfg.chain) out["derived"] = to_json(*cfg.chain);
}

CommandResult cmd_measure(const Flags& f) {
  CommandResult res = start("measure");
  const InstanceConfig cfg = need_config(f);
  add_instance(res.report, cfg);
  MeasureReport rep = run_measure(cfg, cfg.theorem->precision);
  res.report["measure"] = to_json(rep);
  res.report["empirical"] = rep.empirical;
  if (!rep.ok()) res.exit_code = kPrecondition;
  return res;
}

CommandResult cmd_seq(const Flags& f) {
  CommandResult res = start("seq");
  const InstanceConfig cfg = need_config(f);
  add_instance(res.report, cfg);
  const unsigned long r_max = f.r_max.value_or(60);
  MeasureReport rep = run_measure(cfg, cfg.theorem->precision);
  res.report["measure"] = to_json(rep);
  res.report["empirical"] = rep.empirical;
  if (!rep.ok()) {
    res.exit_code = kPrecondition;
    return res;
  }
  const Theorem2Instance inst = resolved_theorem(cfg);
  const auto seq = build_sequence(inst, r_max);
  json pairs = json::array();
  for (const auto& pr : seq)
    pairs.push_back({{"r", pr.r},
                     {"p", pr.p.to_string()},
                     {"q", pr.q.to_string()},
                     {"h_r", pr.h_r.to_string()},
                     {"scale", pr.scale.to_string()},
                     {"integral", pr.p_int_cert && pr.q_int_cert},
                     {"conjugate", pr.conj_cert}});
  res.report["pairs"] = pairs;
  GrowthReport g = verify_bounds(inst, rep, r_max);
  res.report["growth"] = to_json(g);
  if (!g.pass()) res.exit_code = kVerification;
  return res;
}

CommandResult cmd_verify(const Flags& f) {
  CommandResult res = start("verify");
  const InstanceConfig cfg = need_config(f);
  add_instance(res.report, cfg);
  MeasureReport rep = run_measure(cfg, cfg.theorem->precision);
  if (rep.ok()) {
    const Precision need = scan_precision(rep.kappa, Integer(f.q_max));
    if (need > rep.precision) rep = run_measure(cfg, need);
  }
  res.report["measure"] = to_json(rep);
  res.report["empirical"] = rep.empirical;
  if (!rep.ok()) {
    res.exit_code = kPrecondition;
    return res;
  }
  const BaseField& K = cfg.theorem->field->base();
  ScanResult scan;
  if (K.is_rational()) {
    if (!rep.alpha.im().contains_zero()) throw InvariantError("verify: alpha over Q should be real");
    scan = scan_real(Ball(rep.alpha.re()), rep.c, rep.kappa, Integer(f.q_max));
    res.report["scan_kind"] = "real";
  } else {
    scan = scan_imquad(rep.alpha, rep.c, rep.kappa, Integer(f.q_max), Integer(-K.disc()));
    res.report["scan_kind"] = "imaginary_quadratic";
  }
  res.report["scan"] = to_json(scan);
  res.report["scan_note"] = "validates q up to q_max only";
  if (!scan.pass()) res.exit_code = kVerification;
  return res;
}

CommandResult cmd_search(const Flags& f) {
  CommandResult res = start("search");
  if (f.t_min > f.t_max) throw ConfigError("--t-min exceeds --t-max");
  if (f.u1_max < 1 || f.u2_max < 1) throw ConfigError("--u1-max and --u2-max must be positive");
  const Precision prec = f.precision.value_or(256);
  const unsigned long cal_r = f.r_max.value_or(200);
  std::map<std::tuple<unsigned long, unsigned long, std::string>, Calibration> cache;
  struct Hit {
    double kappa;
    long u1, u2, t;
    unsigned long n;
    json row;
  };
  std::vector<Hit> hits;
  std::size_t scanned = 0;
  std::map<std::string, std::size_t> skipped;
  for (unsigned long n : f.n_set) {
    require_exponent(f.m, n);
    for (long t = f.t_min; t <= f.t_max; ++t) {
      if (t == 0 || exact_sqrt(Integer(t))) continue;
      std::vector<long> u2s;
      for (long v = 1; v <= static_cast<long>(f.u2_max); ++v) u2s.push_back(v);
      // For t > 0 the ratio condition picks the sign of u2.
      if (t > 0)
        for (long v = 1; v <= static_cast<long>(f.u2_max); ++v) u2s.push_back(-v);
      for (long u2 : u2s)
        for (long u1 = 1; u1 <= static_cast<long>(f.u1_max); ++u1) {
          ++scanned;
          try {
            CorollaryInstance ci;
            ci.u1 = u1;
            ci.u2 = u2;
            ci.t = t;
            ci.m = f.m;
            ci.n = n;
            ci.precision = prec;
            const CorollaryChain ch = corollary_chain(ci);
            auto key = std::make_tuple(f.m, n, ch.d.get_str());
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, calibrate_CD(f.m, n, ch.d, cal_r)).first;
            ci.C = it->second.C;
            ci.D = it->second.D;
            MeasureReport rep = corollary1(ci);
            if (!rep.ok()) {
              ++skipped[rep.first_failure()->name];
              continue;
            }
            json row = {{"u1", u1}, {"u2", u2}, {"t", t}, {"m", f.m}, {"n", n},
                        {"d", to_json(rep.d)}, {"E", to_json(rep.E)}, {"Q", to_json(rep.Q)},
                        {"kappa", to_json(rep.kappa)}, {"c", to_json(rep.c)}, {"alpha", to_json(rep.alpha)},
                        {"empirical", true}};
            hits.push_back({rep.kappa.mid_d(), u1, u2, t, n, row});
          } catch (const DomainError& e) {
            ++skipped["domain"];
          } catch (const PrecisionError& e) {
            ++skipped["precision"];
          }
        }
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return std::tie(a.kappa, a.n, a.t, a.u2, a.u1) < std::tie(b.kappa, b.n, b.t, b.u2, b.u1);
  });
  json rows = json::array();
  for (const auto& h : hits) {
    if (f.limit && rows.size() >= f.limit) break;
    rows.push_back(h.row);
  }
  json cal = json::object();
  for (const auto& [k, c] : cache)
    cal[std::to_string(std::get<0>(k)) + "," + std::to_string(std::get<1>(k)) + "," + std::get<2>(k)] = to_json(c);
  res.report["grid"] = {{"u1_max", f.u1_max}, {"u2_max", f.u2_max}, {"t_min", f.t_min}, {"t_max", f.t_max},
                        {"n", f.n_set},       {"m", f.m},           {"calibration_r_max", cal_r}};
  res.report["instances"] = rows;
  res.report["found"] = hits.size();
  res.report["scanned"] = scanned;
  res.report["skipped"] = skipped;
  res.report["calibrations"] = cal;
  res.report["empirical"] = true;
  res.report["provenance"] = {{"C", "empirical calibration per (m, n, d)"}, {"D", "empirical calibration per (m, n, d)"},
                              {"order", "ascending kappa"}};
  return res;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  Flags f;
  CLI::App app{"Effective irrationality measures from hypergeometric approximants", "irrmeasure"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", f.out, "Write the JSON report here instead of stdout");
    sub->add_option("--precision", f.precision, "Working precision in bits")->check(CLI::Range(32, 65536));
  };
  auto exponent = [&](CLI::App* sub) {
    sub->add_option("--m", f.m, "Numerator of the exponent m/n");
    sub->add_option("--n", f.n, "Denominator of the exponent m/n");
  };
  auto instance = [&](CLI::App* sub) {
    sub->add_option("--config", f.config, "Instance config (JSON)")->required();
    sub->add_option("--mode", f.mode, "Pipeline")->check(CLI::IsMember({"theorem2", "theorem3", "corollary1"}));
  };

  auto* poly = app.add_subcommand("poly", "Coefficients of X_{m,n,r} and D, N");
  common(poly);
  exponent(poly);
  poly->add_option("--r", f.r, "Degree r");
  poly->add_option("--d", f.d, "d for N (default n)");

  auto* constants = app.add_subcommand("constants", "D, N, cal_N and Gamma ratios per r");
  common(constants);
  exponent(constants);
  constants->add_option("--d", f.d, "d (default n)");
  constants->add_option("--r-max", f.r_max, "Largest r (default 10)");

  auto* calibrate = app.add_subcommand("calibrate", "Empirical C_n, D_n");
  common(calibrate);
  exponent(calibrate);
  calibrate->add_option("--d", f.d, "d (default n)");
  calibrate->add_option("--r-max", f.r_max, "Largest r (default 200)");

  auto* measure = app.add_subcommand("measure", "Measure constants for a configured instance");
  common(measure);
  instance(measure);

  auto* seq = app.add_subcommand("seq", "Approximants p_r, q_r and growth checks");
  common(seq);
  instance(seq);
  seq->add_option("--r-max", f.r_max, "Largest r (default 60)");

  auto* verify = app.add_subcommand("verify", "Brute-force scan of the measure inequality");
  common(verify);
  instance(verify);
  verify->add_option("--q-max", f.q_max, "Largest |q| scanned (default 1000)")->check(CLI::PositiveNumber);

  auto* search = app.add_subcommand("search", "Grid search over corollary instances with E > 1");
  common(search);
  search->add_option("--m", f.m, "Numerator of the exponent (default 1)");
  search->add_option("--n", f.n_set, "Denominators n (comma separated)")->delimiter(',');
  search->add_option("--u1-max", f.u1_max, "u1 ranges over 1..u1-max");
  search->add_option("--u2-max", f.u2_max, "u2 ranges over 1..u2-max (and negatives when t > 0)");
  search->add_option("--t-min", f.t_min, "Smallest t");
  search->add_option("--t-max", f.t_max, "Largest t");
  search->add_option("--r-max", f.r_max, "Calibration range (default 200)");
  search->add_option("--limit", f.limit, "Report at most this many instances (0 = all)");

  CommandResult res;
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    res.text = app.help();
    return res;
  } catch (const CLI::CallForAllHelp&) {
    res.text = app.help("", CLI::AppFormatMode::All);
    return res;
  } catch (const CLI::CallForVersion&) {
    res.text = std::string(version()) + "\n";
    return res;
  } catch (const CLI::ParseError& e) {
    res.exit_code = kInput;
    res.report = envelope("");
    res.report["error"] = {{"kind", "usage"}, {"message", e.what()}};
    return res;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    if (name == "poly") res = cmd_poly(f);
    else if (name == "constants") res = cmd_constants(f);
    else if (name == "calibrate") res = cmd_calibrate(f);
    else if (name == "measure") res = cmd_measure(f);
    else if (name == "seq") res = cmd_seq(f);
    else if (name == "verify") res = cmd_verify(f);
    else res = cmd_search(f);
  } catch (const ConfigError& e) {
    res = start(name, kInput);
    res.report["error"] = {{"kind", "input"}, {"message", e.what()}};
  } catch (const DomainError& e) {
    res = start(name, kInput);
    res.report["error"] = {{"kind", "domain"}, {"message", e.what()}};
  } catch (const InvariantError& e) {
    res = start(name, kVerification);
    res.report["error"] = {{"kind", "invariant"}, {"message", e.what()}};
  } catch (const PrecisionError& e) {
    res = start(name, kVerification);
    res.report["error"] = {{"kind", "precision"}, {"message", e.what()}};
  }
  res.out_path = f.out;
  return res;
}

}  // namespace irrmeasure::cli

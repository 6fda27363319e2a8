#ifndef IRRMEASURE_CLI_CONFIG_HPP
#define IRRMEASURE_CLI_CONFIG_HPP

#include <optional>
#include <string>

#include "irrmeasure_cli/json_io.hpp"

namespace irrmeasure::cli {

// Config file layout (all rationals as strings "a/b"):
//
//   {"mode": "corollary1", "eta": {"u1": "100", "u2": "1", "t": "-3"}, "m": 1, "n": 3}
//
//   {"mode": "theorem2",
//    "field": {"disc": "0", "tau": "-3"},
//    "eta": [["5/2", "0"], ["1/2", "0"]], "beta": "1", "gamma": [["0", "0"], ["1", "0"]],
//    "g": {"coeff": "1/3", "radicand": "3"}, "m": 1, "n": 3, "sign": 1}
//
// Tower elements are [x, y] = x + y sqrt(tau), with x, y either rationals or
// [a, b] = a + b sqrt(disc). tau is reduced to its squarefree part first, so y
// multiplies sqrt(core(tau)). Optional: "C", "D" (decimal strings), "h_sq",
// "h_odd", "h_even", "mu" (-1, i, zeta3, zeta6), "absorb_mu", "precision",
// "calibration_r_max".
struct InstanceConfig {
  std::string mode;
  std::optional<CorollaryInstance> corollary;
  std::optional<CorollaryChain> chain;
  std::optional<Theorem2Instance> theorem;
  json echo;
};

InstanceConfig parse_instance(const json& j, const std::optional<std::string>& mode_override,
                              std::optional<Precision> precision_override);

InstanceConfig load_instance(const std::string& path, const std::optional<std::string>& mode_override,
                             std::optional<Precision> precision_override);

/// Runs the configured pipeline at the given working precision.
MeasureReport run_measure(const InstanceConfig& cfg, Precision prec);

/// The theorem2 instance behind cfg, with C and D filled in.
Theorem2Instance resolved_theorem(const InstanceConfig& cfg);

}  // namespace irrmeasure::cli

#endif  // IRRMEASURE_CLI_CONFIG_HPP

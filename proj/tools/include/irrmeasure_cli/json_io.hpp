#ifndef IRRMEASURE_CLI_JSON_IO_HPP
#define IRRMEASURE_CLI_JSON_IO_HPP

#include <json.hpp>

#include "irrmeasure/approxseq.hpp"
#include "irrmeasure/hyperg.hpp"
#include "irrmeasure/measures.hpp"
#include "irrmeasure/verify.hpp"

namespace irrmeasure::cli {

using nlohmann::json;

/// Malformed configuration or flags (exit code 3).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const Interval& x);
json to_json(const Ball& z);
json to_json(const Rational& q);
json to_json(const Integer& n);
json to_json(const BaseElem& e);
json to_json(const TowerElem& e);
json to_json(const ScaledRoot& s);
json to_json(const ValuationProduct& v);
json to_json(const MeasureReport& rep);
json to_json(const CorollaryChain& ch);
json to_json(const GrowthReport& g);
json to_json(const ScanResult& s);
json to_json(const BoundReport& b);
json to_json(const Calibration& c);

Rational rational_from(const json& j, const std::string& what);
Integer integer_from(const json& j, const std::string& what);
/// Decimal or "a/b" string, or a JSON integer.
Rational decimal_from(const json& j, const std::string& what);
/// A string/integer (rational) or a pair [a, b] meaning a + b sqrt(disc).
BaseElem base_from(const json& j, const BaseField& K, const std::string& what);
/// A rational, or [x, y] meaning x + y sqrt(tau) with x, y as in base_from.
TowerElem tower_from(const json& j, const FieldPtr& L, const std::string& what);

}  // namespace irrmeasure::cli

#endif  // IRRMEASURE_CLI_JSON_IO_HPP

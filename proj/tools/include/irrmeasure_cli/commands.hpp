#ifndef IRRMEASURE_CLI_COMMANDS_HPP
#define IRRMEASURE_CLI_COMMANDS_HPP

#include <string>
#include <vector>

#include "irrmeasure_cli/json_io.hpp"

namespace irrmeasure::cli {

enum ExitCode : int { kOk = 0, kPrecondition = 1, kVerification = 2, kInput = 3 };

struct CommandResult {
  int exit_code = kOk;
  json report;
  /// Set for --help; printed instead of the report.
  std::string text;
  std::string out_path;
};

/// args excludes the program name, e.g. {"poly", "--m", "1", "--n", "3", "--r", "2"}.
CommandResult run(const std::vector<std::string>& args);

const char* version();

}  // namespace irrmeasure::cli

#endif  // IRRMEASURE_CLI_COMMANDS_HPP

#include <fstream>
#include <iostream>

#include "irrmeasure_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  irrmeasure::cli::CommandResult res = irrmeasure::cli::run(args);
  if (!res.text.empty()) {
    std::cout << res.text;
    return res.exit_code;
  }
  const std::string body = res.report.dump(2) + "\n";
  if (res.out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(res.out_path);
    if (!out) {
      std::cerr << "irrmeasure: cannot write " << res.out_path << "\n";
      return irrmeasure::cli::kInput;
    }
    out << body;
  }
  if (res.report.contains("error")) std::cerr << "irrmeasure: " << res.report["error"]["message"].get<std::string>() << "\n";
  return res.exit_code;
}

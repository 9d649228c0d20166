#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinecert::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string mode = "part1";
  std::string order;       // "2,1"
  std::string basepoints;  // "0,3"
  std::string out;         // empty: standard output
  std::string input_diagram;
  int jobs = 1;
  bool verbose = false;
};

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinecert::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aar {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitMaxIter = 2,
  kExitDomainError = 3,
  kExitMismatch = 4,
  kExitViolations = 5,
};

/// Runs one command line; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aar

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fthresh::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kPrecondition = 2,
  kBudget = 3,
  kInvariant = 4,
};

/// Runs one subcommand. `args` excludes the program name. Tables go to `out`
/// as TSV (or one JSON object with --json); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fthresh::cli

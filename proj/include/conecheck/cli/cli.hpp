#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conecheck::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kPass = 0,
  kFail = 2,
  kWarnings = 3,
  kUsage = 4,
  kRuntime = 5,
};

/// Runs one subcommand (audit, simulate, probe, counterexample, ode-check).
/// `args` excludes the program name. Outputs go to --out (default ./out);
/// stdout gets a one-line summary or, with --json, the report document.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conecheck::cli

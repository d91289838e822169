#pragma once

// Command-line frontend. Subcommands: eigenvalues, heine, critical-poly,
// sds-poly, basis-check, discriminant23, transversality, multiplicity.
// Shared flags: --format text|json (default json), --seed, --tol.

#include <iosfwd>
#include <string>
#include <vector>

namespace rectpencil {

enum class ExitStatus : int {
  ok = 0,
  usage_error = 2,
  numeric_failure = 3,
  identity_violation = 4,
};

/// Runs one command; canonical output goes to `out`, diagnostics and usage
/// text to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace rectpencil

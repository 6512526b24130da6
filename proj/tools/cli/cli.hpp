#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace jtlab::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kInvariantViolation = 3,
  kToleranceUnmet = 4,
};

enum class Format { Text, Json };

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  double tol = 1e-6;
  int budget = 100;
  Format format = Format::Text;
  std::uint64_t seed = 0;
};

/// Runs one jtlab command line. Output goes to `out`, diagnostics to `err`.
/// JTLAB_SEED in the environment overrides --seed.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jtlab::cli

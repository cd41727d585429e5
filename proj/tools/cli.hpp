#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subdiv::cli {

/// Exit codes of subdiv_lab.
enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kInputError = 2,
  kResourceError = 3,
  kInternalError = 4,
};

inline constexpr const char* kSchemaVersion = "1.0";

/// Runs one subdiv_lab invocation. `args` excludes the program name.
/// Reports go to `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subdiv::cli

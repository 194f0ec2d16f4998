#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chamber::cli {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kPass = 0,     ///< every requested predicate holds
  kFail = 1,     ///< a predicate failed, or a search/budget was exhausted
  kInvalid = 2,  ///< parse error, bad usage, failed precondition or size guard
  kInternal = 3, ///< a self-check of the library failed
};

inline constexpr std::size_t kMaxFanRank = 4;
inline constexpr std::size_t kMaxCoxRays = 12;

/// Runs one command. `args` excludes the program name. The JSON report goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace chamber::cli

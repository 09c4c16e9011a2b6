#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>

namespace commspread {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitComputation = 3,
};

/// Entry point of the `commspread` tool. `args` excludes the program name.
/// Data goes to files or `out`; diagnostics and logs only ever go to `err`.
/// `env` supplies COMMSPREAD_LOG, the log level used when --log-level is absent.
int run_cli(std::span<const std::string> args, const std::map<std::string, std::string>& env, std::ostream& out,
            std::ostream& err);

}  // namespace commspread

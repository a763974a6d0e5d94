#ifndef DIVLAB_COMMANDS_HPP
#define DIVLAB_COMMANDS_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace divlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInequalityFailure = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

/// Worker cap from a DIVLAB_THREADS value; nullopt when unset. Throws
/// ConfigError unless the value is a positive integer.
std::optional<int> threads_from_env(const char* value);

/// Entry point of the `divlab` tool. `args` excludes the program name.
/// Subcommands: sweep, probe, gamma.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace divlab::cli

#endif  // DIVLAB_COMMANDS_HPP

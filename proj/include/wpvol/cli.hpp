#pragma once

#include <map>
#include <string>
#include <vector>

namespace wpvol {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDomain = 2,
  kExitVerificationFailed = 3,
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Runs one CLI invocation in-process. `args` excludes the program name;
/// `env` supplies WPVOL_CACHE.
CommandResult run_command(const std::vector<std::string>& args, const std::map<std::string, std::string>& env);

}  // namespace wpvol

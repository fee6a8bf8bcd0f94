#include <cstdlib>
#include <iostream>

#include "wpvol/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::map<std::string, std::string> env;
  if (const char* cache = std::getenv("WPVOL_CACHE")) env["WPVOL_CACHE"] = cache;
  wpvol::CommandResult result = wpvol::run_command(args, env);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}

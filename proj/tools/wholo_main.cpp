#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  wholo::cli::Environment env;
  env.color = isatty(STDOUT_FILENO) && std::getenv("NO_COLOR") == nullptr;
  return wholo::cli::run_cli(args, std::cout, std::cerr, env);
}

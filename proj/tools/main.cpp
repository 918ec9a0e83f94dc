#include <iostream>
#include <string>
#include <vector>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  quadrep::cli::install_signal_handlers();
  std::vector<std::string> args(argv, argv + argc);
  return quadrep::cli::run(args, std::cout, std::cerr);
}

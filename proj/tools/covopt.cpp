#include <iostream>
#include <string>
#include <vector>

#include "covopt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return covopt::run_command(args, std::cout, std::cerr);
}

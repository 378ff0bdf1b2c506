#include <iostream>
#include <string>
#include <vector>

#include "toric_ic_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return toric_ic::run_cli(args, std::cout, std::cerr);
}

#include <iostream>
#include <vector>

#include "lud/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lud::run_cli(args, std::cout, std::cerr);
}

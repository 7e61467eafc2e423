#include <iostream>

#include "bdc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bdc::run_cli(args, std::cout, std::cerr);
}

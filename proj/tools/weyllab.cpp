#include <iostream>

#include "weyllab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return weyllab::run_cli(args, std::cout, std::cerr);
}

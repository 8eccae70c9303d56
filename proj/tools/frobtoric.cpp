#include <iostream>
#include <string>
#include <vector>

#include "frobtoric/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return frobtoric::run_cli(args, std::cout, std::cerr);
}

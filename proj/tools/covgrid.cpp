#include <iostream>
#include <string>
#include <vector>

#include "covgrid/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return covgrid::run_cli(args, std::cout, std::cerr);
}

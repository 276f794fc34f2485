#include <iostream>
#include <string>
#include <vector>

#include "vne/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vne::run_cli(args, std::cout, std::cerr);
}

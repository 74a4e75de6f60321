#include <iostream>
#include <string>
#include <vector>

#include "jlt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return jlt::run_cli(args, std::cout, std::cerr);
}

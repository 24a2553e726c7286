#include <iostream>
#include <string>
#include <vector>

#include "transchrome/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return transchrome::run_cli(args, std::cout, std::cerr);
}

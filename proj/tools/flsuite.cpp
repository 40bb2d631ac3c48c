#include <iostream>
#include <string>
#include <vector>

#include "flsuite/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return flsuite::cli::dispatch(args, std::cout, std::cerr);
}

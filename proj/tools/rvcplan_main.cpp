#include <iostream>
#include <string>
#include <vector>

#include "rvcplan/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rvcplan::cli::run(args, std::cout, std::cerr);
}

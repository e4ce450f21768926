#include <iostream>

#include "clbs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return clbs::cli::run(args, std::cout, std::cerr);
}

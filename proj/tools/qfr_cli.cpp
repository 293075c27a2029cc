#include <iostream>

#include "qfr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qfr::cli::run(args, std::cout, std::cerr);
}

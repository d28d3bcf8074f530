#include <iostream>

#include "fdcolor/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fdcolor::run_cli(args, std::cout, std::cerr);
}

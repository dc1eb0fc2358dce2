#include <iostream>
#include <string>
#include <vector>

#include "tailix/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return tailix::run_cli(args, std::cout, std::cerr);
}

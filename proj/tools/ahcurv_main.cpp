#include <iostream>
#include <string>
#include <vector>

#include "ahcurv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ahcurv::run_cli(args, std::cout, std::cerr);
}

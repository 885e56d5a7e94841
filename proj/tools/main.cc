#include <iostream>
#include <string>
#include <vector>

#include "dualthresh/cli.h"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return dualthresh::run_cli(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "rite/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rite::cli_main(args, std::cout, std::cerr);
}

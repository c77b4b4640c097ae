#include <iostream>
#include <string>
#include <vector>

#include "kipa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kipa::cli::run(args, std::cout, std::cerr);
}

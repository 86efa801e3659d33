#include <iostream>

#include "gtl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gtl::run(args, std::cout, std::cerr);
}

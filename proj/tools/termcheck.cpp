#include <iostream>
#include <string>
#include <vector>

#include "termcheck/strategy.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return termcheck::run_cli(args, std::cin, std::cout, std::cerr);
}

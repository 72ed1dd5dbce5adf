#include <iostream>
#include <string>
#include <vector>

#include "padist/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return padist::run_cli(args, std::cout, std::cerr);
}

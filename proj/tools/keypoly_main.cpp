#include <iostream>

#include "keypoly/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return keypoly::cli::run(args, std::cout, std::cerr);
}

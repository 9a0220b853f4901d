#include <iostream>
#include <string>
#include <vector>

#include "qmus/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv, argv + argc);
  return qmus::cli::run(args, std::cout, std::cerr);
}

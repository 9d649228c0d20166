#include <iostream>

#include "spinecert/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spinecert::cli::run(args, std::cout, std::cerr);
}

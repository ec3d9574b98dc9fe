#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"

int main(int argc, char** argv) {
  paradv::cli::configure_workers();
  std::vector<std::string> args(argv + 1, argv + argc);
  return paradv::cli::run(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "algebroid/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return algebroid::cli::run(args, std::cout);
}

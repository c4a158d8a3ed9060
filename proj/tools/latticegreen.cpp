#include <iostream>

#include "latticegreen/cli.hpp"

int main(int argc, char** argv) {
  return latticegreen::cli::main(argc, argv, std::cout, std::cerr);
}

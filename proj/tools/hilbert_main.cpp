#include <iostream>

#include "hilbert/cli.hpp"

int main(int argc, char** argv) {
  return hilbert::cli::main_entry(argc, argv, std::cout, std::cerr);
}

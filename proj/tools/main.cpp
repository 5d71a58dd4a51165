#include <iostream>

#include "twins/cli.hpp"

int main(int argc, char** argv) {
  return twins::cli::run(argc, argv, std::cout, std::cerr);
}

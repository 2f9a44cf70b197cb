#include <iostream>

#include "laconic/cli.hpp"

int main(int argc, char** argv) {
  return laconic::cli::run(argc, argv, std::cout, std::cerr);
}

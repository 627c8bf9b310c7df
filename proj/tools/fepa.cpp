#include <iostream>

#include "fepa/cli.hpp"

int main(int argc, char** argv) {
  return fepa::cli::run(argc, argv, std::cout, std::cerr);
}

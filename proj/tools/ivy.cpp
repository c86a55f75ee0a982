#include <iostream>

#include "ivy/cli.hpp"

int main(int argc, char** argv) {
  return ivy::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

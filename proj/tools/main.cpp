#include <iostream>

#include "nalin/cli.hpp"

int main(int argc, char** argv) {
  return nalin::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "momenta/cli.hpp"

int main(int argc, char** argv) {
  return momenta::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

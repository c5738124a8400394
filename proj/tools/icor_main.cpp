#include <iostream>
#include <string>
#include <vector>

#include "icor/cli.hpp"

int main(int argc, char** argv) {
  return icor::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "fpnf/cli.hpp"

int main(int argc, char** argv) {
  return fpnf::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

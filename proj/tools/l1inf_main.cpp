#include <iostream>
#include <string>
#include <vector>

#include "l1inf/cli.hpp"

int main(int argc, char** argv) {
  return l1inf::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

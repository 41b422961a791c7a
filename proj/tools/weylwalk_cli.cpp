#include <iostream>
#include <string>
#include <vector>

#include "weylwalk/cli.hpp"

int main(int argc, char** argv) {
  return weylwalk::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "cli/commands.h"

int main(int argc, char** argv) {
  return sfm::cli::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

#include <iostream>

#include "isoquad/cli/commands.hpp"

int main(int argc, char** argv) {
  return isoquad::cli::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}

#include <iostream>

#include "cli.h"

int main(int argc, char** argv) {
  return einstein_barrier::cli::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}

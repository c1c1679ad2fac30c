#include <iostream>

#include "riskbench/cli/run.h"

int main(int argc, char** argv) {
  return riskbench::cli::Run(argc, argv, std::cout, std::cerr);
}

// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "fhegen/cli.hpp"

int main(int argc, char** argv) {
  return fhegen::run_cli(argc, argv, std::cout, std::cerr);
}

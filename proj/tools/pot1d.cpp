// SPDX-License-Identifier: MIT
#include <iostream>

#include "pot1d/cli.hpp"

int main(int argc, char** argv) { return pot1d::cli::run_cli(argc, argv, std::cout, std::cerr); }

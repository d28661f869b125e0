#include <iostream>

#include "crossedk/cli.hpp"

int main(int argc, char** argv) { return crossedk::cli::run(argc, argv, std::cout, std::cerr); }

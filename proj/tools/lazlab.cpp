#include <iostream>

#include "lazlab/cli.hpp"

int main(int argc, char** argv) { return lazlab::cli::main(argc, argv, std::cout, std::cerr); }

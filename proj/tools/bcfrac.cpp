#include "bcfrac/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bcfrac::cli::run(argc, argv, std::cout, std::cerr); }

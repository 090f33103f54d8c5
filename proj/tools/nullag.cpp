#include "nullag/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nullag::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "ncgerm/cli.hpp"

int main(int argc, char** argv) { return ncgerm::cli::run(argc, argv, std::cout, std::cerr); }

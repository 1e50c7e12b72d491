#include <iostream>

#include "scigis/cli.hpp"

int main(int argc, char** argv) { return scigis::cli::run(argc, argv, std::cout, std::cerr); }

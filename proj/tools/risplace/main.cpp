#include <iostream>

#include "risplace/cli.hpp"

int main(int argc, char** argv) { return risplace::cli::run(argc, argv, std::cout, std::cerr); }

#include "cavity/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cavity::cli::run(argc, argv, std::cout, std::cerr); }

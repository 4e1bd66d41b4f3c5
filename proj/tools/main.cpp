#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qcdist::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "oddfield/cli.hpp"

int main(int argc, char** argv) { return oddfield::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "capspec/cli.hpp"

int main(int argc, char** argv) { return capspec::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "minidil/cli.hpp"

int main(int argc, char** argv) { return minidil::cli::run(argc, argv, std::cout, std::cerr); }

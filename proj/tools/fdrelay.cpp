#include <iostream>

#include "fdrelay/cli.hpp"

int main(int argc, char** argv) { return fdrelay::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "intertwine_cli/cli.hpp"

int main(int argc, char** argv) { return intertwine::cli::run(argc, argv, std::cout, std::cerr); }

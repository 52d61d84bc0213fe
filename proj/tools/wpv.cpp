#include <iostream>

#include "wpv/cli.hpp"

int main(int argc, char** argv) { return wpv::cli::run_cli(argc, argv, std::cout, std::cerr); }

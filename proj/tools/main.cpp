#include "maxbell/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return maxbell::run_cli(argc, argv, std::cout, std::cerr); }

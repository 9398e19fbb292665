#include <iostream>

#include "lks/cli.hpp"

int main(int argc, char** argv) { return lks::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "rotcav/cli.hpp"

int main(int argc, char** argv) { return rotcav::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "summing/cli.hpp"

int main(int argc, char** argv) { return summing::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "dholo/cli.hpp"

int main(int argc, char** argv) { return dholo::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "seholo/commands.hpp"

int main(int argc, char** argv) { return seholo::run_cli(argc, argv, std::cout, std::cerr); }

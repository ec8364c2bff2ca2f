#include <iostream>

#include "invar/commands.hpp"

int main(int argc, char** argv) { return invar::run_cli(argc, argv, std::cout, std::cerr); }

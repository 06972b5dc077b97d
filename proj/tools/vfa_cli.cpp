#include "vfa/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return vfa::run_cli(argc, argv, std::cout, std::cerr); }

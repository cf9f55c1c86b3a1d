#include <iostream>

#include "udkdv/cli.hpp"

int main(int argc, char** argv) { return udkdv::run_cli(argc, argv, std::cout, std::cerr); }

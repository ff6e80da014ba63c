#include <iostream>

#include "psseg/cli.hpp"

int main(int argc, char** argv) { return psseg::cli::main(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "gwcalc/cli.hpp"

int main(int argc, char** argv) { return gwcalc::cli::main(argc, argv, std::cout, std::cerr); }

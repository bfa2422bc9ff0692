#include <iostream>

#include "unidec/cli.hpp"

int main(int argc, char** argv) { return unidec::cli::main(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "perronkit/cli.hpp"

int main(int argc, char** argv) { return perronkit::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "rssiloc/cli.hpp"

int main(int argc, char** argv) { return rssiloc::cli::run(argc, argv, std::cout, std::cerr); }

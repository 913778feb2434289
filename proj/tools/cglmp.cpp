#include <iostream>

#include "cglmp/cli.hpp"

int main(int argc, char** argv) { return cglmp::cli::run(argc, argv, std::cout, std::cerr); }

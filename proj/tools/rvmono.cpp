#include <iostream>

#include "rvmono/cli.hpp"

int main(int argc, char** argv) { return rvmono::cli::run(argc, argv, std::cout, std::cerr); }

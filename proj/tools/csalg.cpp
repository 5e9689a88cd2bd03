#include <iostream>

#include "csalg/cli.hpp"

int main(int argc, char** argv) { return csalg::cli_main(argc, argv, std::cout, std::cerr); }

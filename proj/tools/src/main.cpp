#include <iostream>

#include "sigmaq_cli/cli.hpp"

int main(int argc, char** argv) { return sigmaq::cli::run_cli(argc, argv, std::cout, std::cerr); }

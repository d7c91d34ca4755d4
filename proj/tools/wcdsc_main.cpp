#include <iostream>

#include "wcdsc/cli_io.hpp"

int main(int argc, char** argv) { return wcdsc::cli::main_entry(argc, argv, std::cout, std::cerr); }

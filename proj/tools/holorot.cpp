#include "holorot/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return holorot::cli::main_entry(argc, argv, std::cout, std::cerr); }

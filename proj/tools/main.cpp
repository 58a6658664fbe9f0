#include "funk_cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return funk::cli::main_entry(argc, argv, std::cout, std::cerr); }

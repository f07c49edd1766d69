#include <iostream>

#include "burgers_cli/app.hpp"

int main(int argc, char** argv) { return burgers::cli::main_entry(argc, argv, std::cout, std::cerr); }

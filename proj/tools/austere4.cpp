#include <iostream>

#include "austere4/cli/commands.hpp"

int main(int argc, char** argv) { return austere4::cli::run(argc, argv, std::cout, std::cerr); }

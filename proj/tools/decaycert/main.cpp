#include <iostream>

#include "decaycert_cli/commands.hpp"

int main(int argc, char** argv) { return decaycert::cli::run(argc, argv, std::cout, std::cerr); }

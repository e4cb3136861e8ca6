#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return voabranch::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "mcglift/cli.hpp"

int main(int argc, char** argv) { return mcglift::cli::run(argc, argv, std::cout, std::cerr); }

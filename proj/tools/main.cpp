#include <iostream>

#include "morphotag/cli.h"

int main(int argc, char** argv) { return morphotag::run_cli(argc, argv, std::cout, std::cerr); }

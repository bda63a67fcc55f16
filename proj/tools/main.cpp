#include <iostream>

#include "thermsynth/cli.hpp"

int main(int argc, char** argv) { return thermsynth::run_cli(argc, argv, std::cout, std::cerr); }

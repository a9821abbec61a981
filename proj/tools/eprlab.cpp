#include <iostream>

#include "eprlab/cli.hpp"

int main(int argc, char** argv) { return eprlab::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "tpc/cli.hpp"

int main(int argc, char** argv) { return tpc::run_cli(argc, argv, std::cout, std::cerr); }

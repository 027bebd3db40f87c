#include <iostream>

#include "dmsym/cli.hpp"

int main(int argc, char** argv) { return dmsym::run_cli(argc, argv, std::cout, std::cerr); }

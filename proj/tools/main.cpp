#include <iostream>

#include "rectpencil/cli.hpp"

int main(int argc, char** argv) { return rectpencil::run_cli(argc, argv, std::cout, std::cerr); }

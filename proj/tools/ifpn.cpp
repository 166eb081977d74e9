#include <iostream>

#include "ifpn/cli.hpp"

int main(int argc, char** argv) { return ifpn::run_cli(argc, argv, std::cout, std::cerr); }

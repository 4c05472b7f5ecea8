#include <iostream>

#include "seqode/commands.hpp"

int main(int argc, char** argv) { return seqode::run_cli(argc, argv, std::cout, std::cerr); }

#include <cha/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return cha::run_cli(argc, argv, std::cout, std::cerr); }

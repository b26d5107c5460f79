#include <iostream>

#include "valuegrad/harness.hpp"

int main(int argc, char** argv) { return valuegrad::run_cli(argc, argv, std::cout, std::cerr); }

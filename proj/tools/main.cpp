#include "unirenorm/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return unirenorm::run(argc, argv, std::cout, std::cerr); }

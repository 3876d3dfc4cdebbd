#include <iostream>

#include "qorrelate/cli.hpp"

int main(int argc, char** argv) { return qorrelate::cli::run(argc, argv, std::cout, std::cerr); }

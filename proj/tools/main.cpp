#include "nfs/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nfs::cli::run(argc, argv, std::cout, std::cerr); }

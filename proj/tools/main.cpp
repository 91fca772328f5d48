#include "phasegrover/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return phasegrover::cli::run_cli(argc, argv, std::cout, std::cerr);
}

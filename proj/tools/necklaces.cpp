#include <iostream>

#include "necklaces/cli.hpp"

int main(int argc, char** argv) {
    return necklaces::cli::run(argc, argv, std::cout, std::cerr);
}

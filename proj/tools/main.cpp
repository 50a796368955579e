#include "catconv/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return catconv::cli::run(argc, argv, std::cout, std::cerr);
}

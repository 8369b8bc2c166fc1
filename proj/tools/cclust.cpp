#include <iostream>

#include "cclust/cli.hpp"

int main(int argc, char** argv) {
    return cclust::run_cli(argc, argv, std::cout, std::cerr);
}

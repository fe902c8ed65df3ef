#include <iostream>

#include "ltls/cli.hpp"

int main(int argc, char** argv) {
    return ltls::cli_main(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "gausscrit/cli.hpp"

int main(int argc, char** argv) {
    return gausscrit::run_cli(argc, argv, std::cout, std::cerr);
}

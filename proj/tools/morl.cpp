#include <iostream>

#include "morl/cli.hpp"

int main(int argc, char** argv) {
    return morl::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

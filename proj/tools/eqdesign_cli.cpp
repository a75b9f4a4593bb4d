#include <iostream>
#include <string>
#include <vector>

#include "eqdesign/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return eqdesign::cli::run(std::move(args), std::cout, std::cerr);
}

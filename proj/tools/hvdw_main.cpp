#include <iostream>
#include <string>
#include <vector>

#include "hvdw/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hvdw::run_cli(args, std::cout, std::cerr);
}

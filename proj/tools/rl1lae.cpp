#include <iostream>
#include <string>
#include <vector>

#include "rl1lae/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return rl1lae::run_cli(args, std::cout, std::cerr);
}

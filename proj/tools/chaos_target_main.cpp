#include <iostream>
#include <string>
#include <vector>

#include "chaos_target/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return chaos_target::run_cli(args, std::cout, std::cerr);
}

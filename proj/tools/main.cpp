#include <iostream>
#include <string>
#include <vector>

#include "dqa/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dqa::run_cli(std::move(args), std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "funbialign/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return funbialign::cli::main_entry(args, std::cout, std::cerr);
}

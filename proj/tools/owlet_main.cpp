#include <iostream>

#include "owlet/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return owlet::cli::run(std::move(args), std::cout, std::cerr);
}

#include "quasigold/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>
#include <unistd.h>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    bool color = isatty(fileno(stdout)) && std::getenv("QUASIGOLD_NO_COLOR") == nullptr;
    return qg::cli::dispatch(args, std::cout, std::cerr, color);
}

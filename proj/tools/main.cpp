#include "i2l/cli.hpp"

#include <iostream>
#include <vector>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return i2l::cli::run(args, std::cout, std::cerr);
}

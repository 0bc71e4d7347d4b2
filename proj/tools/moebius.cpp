#include <iostream>

#include "moebius/cli.hpp"

int main(int argc, char** argv)
{
    std::ios::sync_with_stdio(false);
    return moebius::cli::run(argc, argv, std::cout, std::cerr);
}

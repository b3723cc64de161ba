#include <iostream>

#include "nlcs/cli.hpp"

int main(int argc, char** argv)
{
    std::ios::sync_with_stdio(false);
    return nlcs::cli::main_entry({argv + 1, argv + argc}, std::cout, std::cerr);
}

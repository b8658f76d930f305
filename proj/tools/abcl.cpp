#include <iostream>

#include "abcl/cli.hpp"

int main(int argc, char** argv)
{
    return abcl::run(argc, argv, std::cout, std::cerr);
}

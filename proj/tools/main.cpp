#include "revisop/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return revisop::run_cli(argc, argv, std::cout, std::cerr);
}

#include "mongesym/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return mongesym::cli::run(argc, argv, std::cout, std::cerr);
}

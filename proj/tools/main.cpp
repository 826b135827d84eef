#include "commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return sievekit::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}

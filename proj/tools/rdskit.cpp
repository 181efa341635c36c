#include <iostream>

#include "rds/cli.hpp"

int main(int argc, char** argv) {
    return rds::cli_dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

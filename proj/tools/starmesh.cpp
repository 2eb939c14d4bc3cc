#include <iostream>
#include <string>
#include <vector>

#include <starmesh/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return starmesh::cli::run(std::move(args), std::cout, std::cerr);
}

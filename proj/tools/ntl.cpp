#include "ntl/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    const ntl::cli::CommandResult result = ntl::cli::run(std::vector<std::string>(argv + 1, argv + argc));
    std::cout << result.out;
    std::cerr << result.err;
    return result.status;
}

#include <iostream>
#include <string>
#include <vector>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
    rsl::cli::configure_logging();
    const std::vector<std::string> args(argv + 1, argv + argc);
    return rsl::cli::run(args, std::cout, std::cerr);
}

#include <string>
#include <vector>

#include "holdsim/cli_main.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return holdsim::cli::run_cli(args);
}

#include <vector>

#include "fracgs/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fracgs::run_cli(args);
}

#include <vector>

#include "crooked/io.hpp"

int main(int argc, char** argv) {
    return crooked::run_cli(std::vector<std::string>(argv, argv + argc));
}

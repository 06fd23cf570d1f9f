#include "erbound/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    try {
        return erb::cli::run(argc, argv, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return erb::cli::exit_usage;
    }
}

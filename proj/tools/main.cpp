#include <clocale>

#include "dirac/cli.hpp"

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");  // deterministic '.' decimal output
    return dirac::cli::run(argc, argv);
}

// Standalone acceptance gate; same suite as `adopt accept`.

#include <cstring>
#include <iostream>

#include "adopt/acceptance.hpp"

int main(int argc, char** argv) {
    bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    auto results = adopt::run_acceptance(quick);
    return adopt::report_acceptance(std::cout, results) == 0 ? 0 : 1;
}

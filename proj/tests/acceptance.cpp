// Runs every acceptance criterion at full scale and prints one line per criterion.

#include "mottsim/acceptance.hpp"

#include <iostream>

int main() {
    const auto results = mottsim::acceptance::run_all(mottsim::RunConfig{}, [](const auto& r) {
        std::cout << mottsim::acceptance::format_line(r) << std::endl;
    });
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}

// Acceptance suite: runs the built-in verification criteria and prints one
// pass/fail line per criterion. With arguments, runs only the named criteria
// (e.g. `dcesim_acceptance 3 7a`). Exit 0 iff every executed criterion passes.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "dcesim/validation.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> only;
    for (int i = 1; i < argc; ++i) only.emplace_back(argv[i]);

    const auto start = std::chrono::steady_clock::now();
    const auto results = dcesim::run_validation({}, only);
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              start);

    std::cout << dcesim::format_validation_report(results);

    int failures = 0;
    for (const auto& c : results)
        if (!c.pass) ++failures;
    std::cout << results.size() - failures << "/" << results.size() << " criteria passed\n";
    std::cerr << "runtime: " << elapsed.count() << " ms\n";
    return failures == 0 ? 0 : 1;
}

#pragma once

#include <atomic>
#include <filesystem>
#include <random>
#include <string>

#include <unistd.h>

namespace test_util {

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
    static std::atomic<int> counter{0};
    const auto dir = std::filesystem::temp_directory_path() /
                     ("dcesim-tests-" + std::to_string(::getpid())) /
                     (tag + "-" + std::to_string(counter++));
    std::filesystem::create_directories(dir);
    return dir;
}

/// Deterministic RNG for hand-rolled property tests.
inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed1234u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

} // namespace test_util

#pragma once

#include <cstdint>

// Counter-based random numbers. Every draw is a pure function of
// (key, counter), so results never depend on scheduling or thread count.
namespace sscs::rng {

std::uint64_t splitmix64(std::uint64_t x);

// Derives a stream key from a seed and up to three stream coordinates.
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

class CounterRng {
public:
    explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

    std::uint64_t next_u64();
    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    // Uniform on (0, 1].
    double uniform_open0();
    // Standard normal via Box-Muller (both values are used).
    double normal();

private:
    std::uint64_t key_;
    std::uint64_t counter_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace sscs::rng

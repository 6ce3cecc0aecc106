#pragma once

#include <cstdint>

namespace tbf {

// SplitMix64: a counter-based generator (Steele, Lea, Vigna). One 64-bit
// state advanced by a Weyl constant, output scrambled by two xor-shift
// multiplies. Identical seed and call sequence give identical output on
// every platform, which is the reproducibility contract of the samplers.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform double in [0,1) with 53 random bits
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::uint64_t state_;
};

} // namespace tbf

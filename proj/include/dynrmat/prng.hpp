#pragma once

#include <cstdint>

#include "dynrmat/rational.hpp"

namespace dynrmat {

// splitmix64: tiny deterministic PRNG, identical output on every platform.
// Used anywhere the suite or the CLI needs reproducible pseudorandomness.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), n > 0 (modulo bias is irrelevant at our sizes)
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    long range(long lo, long hi) { // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // sample coordinate for zero-testing: +-(1..10^4) / (1..10^3)
    Rational sample_coordinate() {
        long num = range(1, 10000);
        long den = range(1, 1000);
        if (next() & 1) num = -num;
        return Rational(num, den);
    }
};

} // namespace dynrmat

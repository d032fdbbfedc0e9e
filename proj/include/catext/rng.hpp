#pragma once

#include <cstdint>
#include <random>

namespace catext {

// Deterministic RNG for instance generators and property tests.  Draws go
// through modulo reduction rather than std distributions so that a seed
// yields the same stream on every platform.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t next() { return eng(); }
    std::size_t below(std::size_t n) { return n == 0 ? 0 : std::size_t(next() % n); }
    long long int_in(long long lo, long long hi) {
        return lo + (long long)below(std::size_t(hi - lo + 1));
    }
    bool chance(unsigned num, unsigned den) { return below(den) < num; }
};

} // namespace catext

#pragma once

// Deterministic random source. mt19937_64 has a fully specified sequence, and
// the two helpers below avoid std::uniform_*_distribution, whose output is
// implementation-defined. Replicate r of a batch uses seed base_seed + r.

#include <cstdint>
#include <random>

namespace segsim {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Unbiased draw from {0, ..., n-1} by rejection.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t rem = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
        std::uint64_t x = eng_();
        if (rem) {
            std::uint64_t top = UINT64_MAX - rem;  // last accepted value
            while (x > top) x = eng_();
        }
        return x % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace segsim

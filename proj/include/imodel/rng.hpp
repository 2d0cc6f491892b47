#pragma once

#include <cstdint>
#include <random>

namespace imodel {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// splitmix64 output function. Cheap, full-period mixing; used only to derive
// sub-seeds, never as the simulation generator itself.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Sub-seed `index` of a master seed: the (index+1)-th splitmix64 output for a
// state started at `master`. Streams, repetitions and nested derivations all
// go through this one function so a run is fully determined by one seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + (index + 1) * kGoldenGamma);
}

using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits. std::*_distribution is
// implementation-defined, so all sampling goes through these helpers to keep
// output byte-identical across standard libraries.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

inline double uniform_range(Rng& rng, double lo, double hi) {
    return lo == hi ? lo : lo + uniform01(rng) * (hi - lo);
}

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

}  // namespace imodel

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pm {

// All randomness in the library flows through mt19937_64 engines seeded from
// a single master seed. Independent streams (permutation, radii, per-trial,
// per-block) are derived with fixed labels so results are identical across
// platforms and thread counts.

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream labels. Values are part of the serialization contract: changing them
// changes every seeded result.
enum class Stream : std::uint64_t {
    PivotOrder = 1,
    Radius     = 2,
    BlockSolve = 3,
    Trial      = 4,
    Points     = 5,
    Potentials = 6,
    IcmSweep   = 7,
};

inline std::uint64_t derive_seed(std::uint64_t master, Stream label) {
    return mix64(master ^ mix64(static_cast<std::uint64_t>(label)));
}

inline std::uint64_t derive_seed(std::uint64_t master, Stream label, std::uint64_t index) {
    return mix64(derive_seed(master, label) + index);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

// Uniform double in [0, 1) from the top 53 bits. std::uniform_real_distribution
// is implementation-defined; this is not.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, bound) via rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = (UINT64_MAX / bound) * bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

// Fisher-Yates permutation of 0..n-1.
inline std::vector<std::uint32_t> random_permutation(std::uint32_t n, std::mt19937_64& rng) {
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
    for (std::uint32_t i = n; i > 1; --i) {
        const auto j = static_cast<std::uint32_t>(uniform_below(rng, i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

}  // namespace pm

#pragma once

#include <cstdint>
#include <random>

namespace semialg {

using Rng = std::mt19937_64;

// Derives a child seed from a parent seed and a tag (splitmix64 finalizer).
// Every module that forks work derives per-branch seeds through this, so
// results are reproducible regardless of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a,
                                 std::uint64_t tag_b) {
    return derive_seed(derive_seed(seed, tag_a), tag_b);
}

}  // namespace semialg

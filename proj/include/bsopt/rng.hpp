#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bsopt {

// Stateless splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Counter-based stream derivation:
//   stream_seed = mix64(mix64(base ^ fnv1a64(label)) ^ counter)
// Every RNG stream in the project is derived this way from a master seed,
// so a (seed, label, counter) triple fully identifies a stream. Ports in
// other languages can reproduce the structure from this formula.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label,
                                 std::uint64_t counter = 0) {
    return mix64(mix64(base ^ fnv1a64(label)) ^ counter);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace bsopt

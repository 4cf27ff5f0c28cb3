#pragma once

#include <cstdint>
#include <random>

namespace sa::innovations {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based seed split: every (component, index) pair gets an independent seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t component,
                                    std::uint64_t index = 0) noexcept {
    return mix64(mix64(mix64(seed) ^ component) ^ (index * 0xd1b54a32d192ed03ULL));
}

/// Named components for derive_seed.
namespace stream {
inline constexpr std::uint64_t source = 1;
inline constexpr std::uint64_t martingale = 2;
inline constexpr std::uint64_t replication = 3;
inline constexpr std::uint64_t block = 4;
inline constexpr std::uint64_t aux = 5;
} // namespace stream

/// Uniform double in [0,1) with 53 random bits.
inline double uniform01(std::mt19937_64& eng) noexcept {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0,1].
inline double uniform01_open_left(std::mt19937_64& eng) noexcept {
    return static_cast<double>((eng() >> 11) + 1) * 0x1.0p-53;
}

} // namespace sa::innovations

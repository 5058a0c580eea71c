#pragma once

#include <cstdint>

namespace recordlab {

inline constexpr const char* kSeedMixName =
    "splitmix64(splitmix64(master) + (j+1)*0x9e3779b97f4a7c15)";

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed of stream j: the j-th output of a SplitMix64 generator keyed by the
// mixed master seed. Injective in j for a fixed master seed.
constexpr std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t j) noexcept {
  return mix64(mix64(master_seed) + (j + 1) * 0x9e3779b97f4a7c15ULL);
}

}  // namespace recordlab

#pragma once

#include <cstdint>
#include <random>

namespace obls {

/// splitmix64 mix; used to derive independent stream seeds from (root, index).
inline std::uint64_t mix_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t root, std::uint64_t index = 0) {
  return std::mt19937_64(mix_seed(root, index));
}

}  // namespace obls

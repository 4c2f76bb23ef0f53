#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace tin {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Counter-based child seed: the same (base, path) always yields the same seed,
// and distinct paths give statistically independent streams.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

inline Rng make_rng(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
  return Rng(derive_seed(base, path));
}

}  // namespace tin

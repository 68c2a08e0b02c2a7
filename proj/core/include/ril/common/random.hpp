#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ril {

using Rng = std::mt19937_64;

/// Derives a decorrelated stream seed from a base seed and a list of stream
/// indices (splitmix64 chaining). Pure function of its inputs.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> stream);

inline Rng make_rng(std::uint64_t base, std::initializer_list<std::uint64_t> stream = {}) {
  return Rng(derive_seed(base, stream));
}

}  // namespace ril

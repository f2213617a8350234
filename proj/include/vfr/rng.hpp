// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the vfr authors
#pragma once

#include <cstdint>
#include <random>

namespace vfr {

using Rng = std::mt19937_64;

// splitmix64 finalizer; decorrelates structured seed inputs.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derive an independent stream seed from (seed, a, b). Used so per-user /
// per-fold randomness does not depend on evaluation order or thread count.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
  return Rng(mix_seed(seed, a, b));
}

}  // namespace vfr

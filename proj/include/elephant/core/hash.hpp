// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace elephant {

// 64-bit finalizer (splitmix64).
constexpr uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

constexpr uint64_t hash_combine(uint64_t seed, uint64_t v) {
  return mix64(seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2)));
}

template <typename... Ts>
constexpr uint64_t hash_values(uint64_t seed, Ts... vs) {
  ((seed = hash_combine(seed, uint64_t(vs))), ...);
  return seed;
}

// Maps the high 24 bits of a hash to [0,1).
constexpr float hash_to_unit(uint64_t h) { return float(h >> 40) * 0x1p-24f; }

inline uint64_t fnv1a64(std::span<const std::byte> bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (std::byte b : bytes) {
    h ^= uint64_t(b);
    h *= 0x100000001b3ull;
  }
  return h;
}

} // namespace elephant

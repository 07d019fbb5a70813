// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/hash.hpp"

#include <cstdint>

namespace elephant::render {

// Counter-based sampler: dimension d of sample s at pixel (x,y) is a pure
// hash of (seed, x, y, s, d), so results do not depend on scheduling.
class Sampler {
public:
  Sampler(uint64_t seed, uint32_t px, uint32_t py, uint64_t sampleIndex)
      : key_(hash_values(seed, px, py, sampleIndex)) {}

  float next() { return hash_to_unit(hash_combine(key_, dim_++)); }
  uint32_t dimension() const { return dim_; }

private:
  uint64_t key_;
  uint32_t dim_ = 0;
};

} // namespace elephant::render

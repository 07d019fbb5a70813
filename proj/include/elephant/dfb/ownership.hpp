// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace elephant::dfb {

// Round-robin tile ownership: tile i belongs to worker i mod numWorkers.
struct TileOwnership {
  uint32_t numTiles = 0;
  uint32_t numWorkers = 1;

  uint32_t owner(uint32_t tile) const { return tile % numWorkers; }
  std::vector<uint32_t> owned(uint32_t worker) const;
  uint32_t load(uint32_t worker) const;
};

// Throws ZeroWorkers when numWorkers is 0.
TileOwnership assign_tiles(uint32_t numTiles, uint32_t numWorkers);

} // namespace elephant::dfb

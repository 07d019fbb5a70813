// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/dfb/ownership.hpp"

#include "elephant/core/error.hpp"

namespace elephant::dfb {

std::vector<uint32_t> TileOwnership::owned(uint32_t worker) const {
  std::vector<uint32_t> tiles;
  for (uint32_t t = worker; t < numTiles; t += numWorkers) tiles.push_back(t);
  return tiles;
}

uint32_t TileOwnership::load(uint32_t worker) const {
  if (worker >= numWorkers || worker >= numTiles) return 0;
  return (numTiles - worker + numWorkers - 1) / numWorkers;
}

TileOwnership assign_tiles(uint32_t numTiles, uint32_t numWorkers) {
  if (numWorkers == 0) throw ZeroWorkers();
  return TileOwnership{numTiles, numWorkers};
}

} // namespace elephant::dfb

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/render/world.hpp"

#include <string>

namespace elephant::harness {

struct TraversalReport {
  uint64_t rays = 0;
  uint64_t hits = 0;
  double seconds = 0;
  double mraysPerSecond = 0;
  double nodeVisitsPerRay = 0;
  double primitiveTestsPerRay = 0;
};

// Times closest-hit queries alone: jittered primary rays of a width x height
// image, repeated passes times, over all threads.
TraversalReport bench_traversal(const render::World &world, uint32_t width, uint32_t height, uint32_t passes,
                                bool parallel = true);
std::string format_traversal(const TraversalReport &r);

} // namespace elephant::harness

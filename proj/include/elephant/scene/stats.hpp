// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/ingest/scene_desc.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace elephant::scene {

struct StatsReport {
  uint64_t uniqueObjects = 0;
  uint64_t uniqueShapes = 0;
  uint64_t uniqueTriangles = 0;
  uint64_t uniqueQuads = 0;
  uint64_t uniqueCurveSegments = 0;
  uint64_t instanceCount = 0;
  uint64_t instancedTriangles = 0;
  uint64_t instancedQuads = 0;
  uint64_t instancedCurveSegments = 0;
  // Objects bucketed by floor(log2(primitive count)); key -1 holds empty objects.
  std::map<int, uint64_t> perObjectPrimitiveHistogram;

  friend bool operator==(const StatsReport &, const StatsReport &) = default;
};

StatsReport scene_stats(const ingest::SceneDesc &scene);

std::string format_stats(const StatsReport &s);
std::string format_stats_kv(const StatsReport &s);

} // namespace elephant::scene

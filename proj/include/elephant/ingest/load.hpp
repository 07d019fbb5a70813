// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/ingest/scene_desc.hpp"

#include <cstdint>
#include <filesystem>

namespace elephant::ingest {

// Loads a .pbrt or .biff file (by extension) and validates it.
SceneDesc load_scene(const std::filesystem::path &path);

struct EntityCounts {
  uint64_t objects = 0;
  uint64_t shapes = 0;
  uint64_t instances = 0;
  uint64_t materials = 0;
  uint64_t textures = 0;
  uint64_t lights = 0;
  uint64_t vertices = 0;
  uint64_t primitives = 0; // triangles + quads + curve segments

  friend bool operator==(const EntityCounts &, const EntityCounts &) = default;
};

EntityCounts count_entities(const SceneDesc &scene);

struct LoadReport {
  double asciiSeconds = 0.0;
  double binarySeconds = 0.0;
  double speedup = 0.0;
  EntityCounts asciiCounts;
  EntityCounts binaryCounts;
};

// Times the ASCII path (parse, plus quad merging when quadMerge is set, which
// mirrors what `convert` stores) against a BIFF read of the same scene.
// Throws MismatchedScenes when the two paths disagree on entity counts.
LoadReport bench_load(const std::filesystem::path &pbrtPath, const std::filesystem::path &biffPath,
                      bool quadMerge = true);

} // namespace elephant::ingest

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/ingest/scene_desc.hpp"
#include "elephant/scene/stats.hpp"
#include "elephant/shade/face_texture.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace elephant::scene {

// Knobs for the procedural island. Counts are signed so that negative input
// is representable and rejected.
struct GeneratorSpec {
  int terrainResolution = 8; // displaced grid cells per side, emitted as paired triangles
  bool fineOverlaySurface = false;
  int treeObjects = 0;
  int leavesPerTree = 0; // instances of each tree's leaf object
  float leafSize = 0.3f; // meters
  int pebbles = 0;       // instances of one finely tessellated pebble object
  int curveClumps = 0;
  int curvesPerClump = 16;
  bool textured = false;
  int textureResolution = 16; // per-face texel resolution (power of two)
  bool keyLight = true;
  bool environment = true;
};

// Independent ground truth computed from the generator parameters, not by walking
// the scene.
struct Manifest {
  uint64_t uniqueObjects = 0;
  uint64_t uniqueShapes = 0;
  uint64_t uniqueTriangles = 0;
  uint64_t uniqueQuads = 0;
  uint64_t uniqueCurveSegments = 0;
  uint64_t instanceCount = 0;
  uint64_t instancedTriangles = 0;
  uint64_t instancedQuads = 0;
  std::map<std::string, Aabb> objectBounds;
};

struct GeneratedTexture {
  std::string path; // relative to the scene directory
  shade::FaceTextureData data;
};

struct GeneratedScene {
  ingest::SceneDesc scene;
  Manifest manifest;
  std::vector<GeneratedTexture> textures;
};

// Deterministic for (spec, seed). Throws SpecOutOfRange for non-positive
// terrain resolution, negative counts, or trees without leaves.
GeneratedScene generate_challenge_scene(const GeneratorSpec &spec, uint64_t seed);

// Presets: "mini", "overlap", "tessellation", "textured".
GeneratorSpec preset(std::string_view name);
std::vector<std::string> preset_names();

// Writes every generated texture below dir.
void write_textures(const GeneratedScene &g, const std::filesystem::path &dir);

bool manifest_matches(const Manifest &m, const StatsReport &s);

// A single white sphere under a constant unit environment (no other lights).
ingest::SceneDesc furnace_sphere_scene(int rings = 48, int segments = 96);

} // namespace elephant::scene

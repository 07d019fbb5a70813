// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/accel/two_level.hpp"
#include "elephant/ingest/scene_desc.hpp"
#include "elephant/scene/curves.hpp"
#include "elephant/shade/lights.hpp"
#include "elephant/shade/texture_cache.hpp"

#include <filesystem>
#include <memory>
#include <vector>

namespace elephant::render {

// How a shape resolves its material and face texture.
struct ShapeBinding {
  uint32_t material = 0;
  int32_t texture = -1;
  bool pairedFaces = false; // texture face i covers triangles 2i and 2i+1
};

struct WorldOptions {
  uint32_t curveSegmentsPerSpan = scene::kDefaultSegmentsPerSpan;
  bool mergeQuads = true;
  shade::TextureCacheConfig textureCache;
  bool parallelBuild = true;
};

// Render-ready scene: acceleration structure, lights, materials and texture cache.
class World {
public:
  // Relative texture and environment paths resolve against baseDir. Throws
  // InvalidScene when a texture's face count matches none of the shapes using it.
  explicit World(ingest::SceneDesc scene, const std::filesystem::path &baseDir = {}, WorldOptions options = {});
  World(const World &) = delete;
  World &operator=(const World &) = delete;

  const ingest::SceneDesc &scene() const { return scene_; }
  const accel::TwoLevelAccel &accel() const { return accel_; }
  const std::vector<shade::Light> &lights() const { return lights_; }
  const ingest::DisneyMaterial &material(uint32_t id) const { return materials_[id]; }
  const ShapeBinding &binding(uint32_t objectId, uint32_t geomId) const { return bindings_[objectId][geomId]; }
  shade::FaceTextureCache *textures() const { return textures_.get(); }
  const ingest::CameraDesc &camera() const { return scene_.camera; }
  // Scene-wide index of a shape, shared by all instances of its object.
  uint32_t geometry_index(uint32_t objectId, uint32_t geomId) const { return geometryOffsets_[objectId] + geomId; }
  const WorldOptions &options() const { return options_; }
  double build_seconds() const { return buildSeconds_; }

private:
  ingest::SceneDesc scene_;
  WorldOptions options_;
  accel::TwoLevelAccel accel_;
  std::vector<shade::Light> lights_;
  std::vector<ingest::DisneyMaterial> materials_;
  std::vector<std::vector<ShapeBinding>> bindings_;
  std::vector<uint32_t> geometryOffsets_;
  std::unique_ptr<shade::FaceTextureCache> textures_;
  double buildSeconds_ = 0.0;
};

} // namespace elephant::render

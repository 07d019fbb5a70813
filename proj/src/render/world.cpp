// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/render/world.hpp"

#include "elephant/core/error.hpp"
#include "elephant/ingest/quad_merge.hpp"

#include <chrono>
#include <variant>

namespace elephant::render {

namespace {

accel::AccelGeometry to_accel(const scene::Geometry &g, uint32_t segments, std::optional<Vec3f> eye) {
  accel::AccelGeometry out;
  if (const auto *t = std::get_if<scene::TriangleMesh>(&g)) {
    out.kind = accel::GeometryKind::Triangles;
    out.positions = t->positions;
    out.indices = t->indices;
    out.normals = t->normals;
  } else if (const auto *q = std::get_if<scene::QuadMesh>(&g)) {
    out.kind = accel::GeometryKind::Quads;
    out.positions = q->positions;
    out.indices = q->indices;
  } else {
    scene::QuadMesh ribbons = scene::tessellate_curves(std::get<scene::CurveSet>(g), segments, eye);
    out.kind = accel::GeometryKind::Quads;
    out.positions = std::move(ribbons.positions);
    out.indices = std::move(ribbons.indices);
  }
  return out;
}

} // namespace

World::World(ingest::SceneDesc scene, const std::filesystem::path &baseDir, WorldOptions options)
    : scene_(std::move(scene)), options_(options) {
  const auto start = std::chrono::steady_clock::now();
  ingest::validate(scene_);
  if (options_.mergeQuads) ingest::merge_scene_quads(scene_);

  materials_ = scene_.materials;
  if (materials_.empty()) materials_.push_back({});

  if (!scene_.textures.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto &t : scene_.textures) {
      std::filesystem::path p = t.path;
      if (p.is_relative() && !baseDir.empty()) p = baseDir / p;
      files.push_back(p);
    }
    textures_ = std::make_unique<shade::FaceTextureCache>(std::move(files), options_.textureCache);
  }

  // Ribbons face the camera as seen from each object's first instance.
  std::vector<std::optional<Vec3f>> eyes(scene_.objects.size());
  for (const auto &inst : scene_.instances) {
    if (!eyes[inst.objectRef]) eyes[inst.objectRef] = inst.transform.inverse().point(scene_.camera.position);
  }

  std::vector<accel::AccelObject> objects(scene_.objects.size());
  bindings_.resize(scene_.objects.size());
  uint32_t shapesSoFar = 0;
  for (std::size_t o = 0; o < scene_.objects.size(); ++o) {
    geometryOffsets_.push_back(shapesSoFar);
    shapesSoFar += uint32_t(scene_.objects[o].shapes.size());
    for (const auto &shape : scene_.objects[o].shapes) {
      accel::AccelGeometry g = to_accel(shape.geometry, options_.curveSegmentsPerSpan, eyes[o]);
      ShapeBinding b;
      b.material = shape.materialRef < materials_.size() ? shape.materialRef : 0;
      b.texture = materials_[b.material].textureRef;
      if (b.texture >= 0) {
        const uint32_t faces = textures_->face_count(uint32_t(b.texture));
        const uint32_t prims = g.primitive_count();
        if (faces == prims) {
          b.pairedFaces = false;
        } else if (g.kind == accel::GeometryKind::Triangles && 2 * uint64_t(faces) == prims) {
          b.pairedFaces = true;
        } else {
          throw InvalidScene("texture '" + scene_.textures[b.texture].name + "' has " + std::to_string(faces) +
                             " faces but object '" + scene_.objects[o].name + "' has " + std::to_string(prims) +
                             " primitives");
        }
      }
      objects[o].geometries.push_back(std::move(g));
      bindings_[o].push_back(b);
    }
  }
  std::vector<accel::AccelInstance> instances;
  instances.reserve(scene_.instances.size());
  for (const auto &i : scene_.instances) instances.push_back({i.objectRef, i.transform});
  accel_ = accel::TwoLevelAccel(std::move(objects), std::move(instances), {options_.parallelBuild});

  for (const auto &l : scene_.lights) lights_.push_back(shade::make_light(l, baseDir));
  buildSeconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace elephant::render

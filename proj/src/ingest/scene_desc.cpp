// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/ingest/scene_desc.hpp"

#include "elephant/core/error.hpp"

#include <string>

namespace elephant::ingest {

namespace {

void check_indices(const std::vector<uint32_t> &indices, std::size_t count, const std::string &where) {
  for (uint32_t i : indices)
    if (i >= count) throw InvalidScene(where + ": vertex index out of range");
}

void check_positions(const std::vector<Vec3f> &positions, const std::string &where) {
  for (const auto &p : positions)
    if (std::isnan(p.x) || std::isnan(p.y) || std::isnan(p.z)) throw InvalidScene(where + ": NaN position");
}

} // namespace

void validate(const SceneDesc &scene) {
  for (std::size_t o = 0; o < scene.objects.size(); ++o) {
    for (std::size_t s = 0; s < scene.objects[o].shapes.size(); ++s) {
      const ShapeDesc &shape = scene.objects[o].shapes[s];
      const std::string where = "object " + std::to_string(o) + " shape " + std::to_string(s);
      if (shape.materialRef >= scene.materials.size()) throw InvalidScene(where + ": material out of range");
      std::visit(
          [&](const auto &g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, scene::TriangleMesh>) {
              if (g.indices.size() % 3) throw InvalidScene(where + ": ragged triangle indices");
              if (!g.normals.empty() && g.normals.size() != g.positions.size())
                throw InvalidScene(where + ": normal count");
              check_indices(g.indices, g.positions.size(), where);
              check_positions(g.positions, where);
            } else if constexpr (std::is_same_v<G, scene::QuadMesh>) {
              if (g.indices.size() % 4) throw InvalidScene(where + ": ragged quad indices");
              check_indices(g.indices, g.positions.size(), where);
              check_positions(g.positions, where);
            } else {
              if (g.controlPoints.size() % 4) throw InvalidScene(where + ": curve segments need 4 control points");
              if (g.widths.size() != g.controlPoints.size()) throw InvalidScene(where + ": width count");
              for (float w : g.widths)
                if (!(w > 0.f)) throw InvalidScene(where + ": non-positive curve width");
              check_positions(g.controlPoints, where);
            }
          },
          shape.geometry);
    }
  }
  for (std::size_t i = 0; i < scene.instances.size(); ++i) {
    const InstanceDesc &inst = scene.instances[i];
    if (inst.objectRef >= scene.objects.size())
      throw InvalidScene("instance " + std::to_string(i) + ": object out of range");
    if (!(std::abs(inst.transform.determinant()) > 1e-12))
      throw InvalidScene("instance " + std::to_string(i) + ": singular transform");
  }
  for (std::size_t m = 0; m < scene.materials.size(); ++m) {
    const int32_t t = scene.materials[m].textureRef;
    if (t < -1 || t >= int32_t(scene.textures.size()))
      throw InvalidScene("material " + std::to_string(m) + ": texture out of range");
  }
}

} // namespace elephant::ingest

namespace elephant::scene {

Aabb bounds(const Geometry &g) {
  Aabb box;
  std::visit(
      [&](const auto &geom) {
        using G = std::decay_t<decltype(geom)>;
        if constexpr (std::is_same_v<G, CurveSet>) {
          for (std::size_t i = 0; i < geom.controlPoints.size(); ++i) {
            const float r = geom.widths[i] * 0.5f;
            box.extend(geom.controlPoints[i] - Vec3f(r));
            box.extend(geom.controlPoints[i] + Vec3f(r));
          }
        } else {
          for (const auto &p : geom.positions) box.extend(p);
        }
      },
      g);
  return box;
}

} // namespace elephant::scene

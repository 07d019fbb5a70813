// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/ingest/quad_merge.hpp"

#include "elephant/core/error.hpp"

namespace elephant::ingest {

scene::QuadMesh merge_triangle_pairs(const scene::TriangleMesh &mesh) {
  const std::size_t triangles = mesh.triangle_count();
  if (triangles % 2 != 0) throw NotPaired(triangles - 1);
  scene::QuadMesh quads;
  quads.positions = mesh.positions;
  quads.indices.reserve(triangles * 2);
  const auto &idx = mesh.indices;
  for (std::size_t q = 0; q < triangles / 2; ++q) {
    const uint32_t *t0 = &idx[q * 6];
    const uint32_t *t1 = &idx[q * 6 + 3];
    // (a,b,c) + (a,c,d) -> (a,b,c,d), with d distinct from the first triangle.
    if (t0[0] != t1[0] || t0[2] != t1[1] || t1[2] == t0[0] || t1[2] == t0[1] || t1[2] == t0[2])
      throw NotPaired(q * 2);
    quads.indices.insert(quads.indices.end(), {t0[0], t0[1], t0[2], t1[2]});
  }
  return quads;
}

MergeSummary merge_scene_quads(SceneDesc &scene) {
  MergeSummary summary;
  for (auto &object : scene.objects) {
    for (auto &shape : object.shapes) {
      auto *tri = std::get_if<scene::TriangleMesh>(&shape.geometry);
      if (!tri) continue;
      if (!tri->normals.empty()) {
        ++summary.keptTriangleShapes;
        continue;
      }
      try {
        shape.geometry = merge_triangle_pairs(*tri);
        ++summary.mergedShapes;
      } catch (const NotPaired &) {
        ++summary.keptTriangleShapes;
      }
    }
  }
  return summary;
}

} // namespace elephant::ingest

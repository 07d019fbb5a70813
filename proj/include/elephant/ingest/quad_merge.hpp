// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/ingest/scene_desc.hpp"

namespace elephant::ingest {

// Merges consecutive triangle pairs (a,b,c),(a,c,d) into quads (a,b,c,d).
// Quad i comes from triangles 2i and 2i+1. Throws NotPaired on the first
// triangle that breaks the convention.
scene::QuadMesh merge_triangle_pairs(const scene::TriangleMesh &mesh);

struct MergeSummary {
  std::size_t mergedShapes = 0;
  std::size_t keptTriangleShapes = 0;
};

// Replaces every pairable triangle mesh in the scene by its quad mesh; meshes
// that violate the pairing convention (or carry per-vertex normals) stay as
// triangles.
MergeSummary merge_scene_quads(SceneDesc &scene);

} // namespace elephant::ingest

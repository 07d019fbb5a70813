// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/math.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace elephant::scene {

struct TriangleMesh {
  std::vector<Vec3f> positions;
  std::vector<uint32_t> indices; // 3 per triangle
  std::vector<Vec3f> normals;    // empty or one per position

  std::size_t triangle_count() const { return indices.size() / 3; }
  friend bool operator==(const TriangleMesh &, const TriangleMesh &) = default;
};

// Quad (a,b,c,d) is intersected as triangles (a,b,c) and (a,c,d).
struct QuadMesh {
  std::vector<Vec3f> positions;
  std::vector<uint32_t> indices; // 4 per quad

  std::size_t quad_count() const { return indices.size() / 4; }
  friend bool operator==(const QuadMesh &, const QuadMesh &) = default;
};

enum class CurveStyle : uint32_t { Flat = 0, Round = 1 };

// Cubic Bezier segments, four control points each.
struct CurveSet {
  std::vector<Vec3f> controlPoints; // 4 per segment
  std::vector<float> widths;        // one per control point
  CurveStyle style = CurveStyle::Flat;

  std::size_t segment_count() const { return controlPoints.size() / 4; }
  friend bool operator==(const CurveSet &, const CurveSet &) = default;
};

using Geometry = std::variant<TriangleMesh, QuadMesh, CurveSet>;

Aabb bounds(const Geometry &g);

} // namespace elephant::scene

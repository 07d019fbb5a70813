// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/scene/curves.hpp"

#include <stdexcept>

namespace elephant::scene {

Vec3f bezier_point(std::span<const Vec3f, 4> cp, float t) {
  const float s = 1.f - t;
  return cp[0] * (s * s * s) + cp[1] * (3.f * s * s * t) + cp[2] * (3.f * s * t * t) + cp[3] * (t * t * t);
}

Vec3f bezier_tangent(std::span<const Vec3f, 4> cp, float t) {
  const float s = 1.f - t;
  return (cp[1] - cp[0]) * (3.f * s * s) + (cp[2] - cp[1]) * (6.f * s * t) + (cp[3] - cp[2]) * (3.f * t * t);
}

namespace {

Vec3f any_perpendicular(const Vec3f &t) {
  const Vec3f axis = std::abs(t.x) < 0.9f ? Vec3f{1, 0, 0} : Vec3f{0, 1, 0};
  return normalize(cross(t, axis));
}

// Width along a segment, linear in the curve parameter between the
// end-point widths and through the interior control-point widths.
float width_at(std::span<const float, 4> w, float t) {
  const float x = t * 3.f;
  const int i = std::min(2, int(x));
  const float f = x - float(i);
  return w[i] * (1.f - f) + w[i + 1] * f;
}

} // namespace

QuadMesh tessellate_curves(const CurveSet &curves, uint32_t segmentsPerSpan, std::optional<Vec3f> cameraPosition) {
  if (segmentsPerSpan < 1) throw std::invalid_argument("segmentsPerSpan must be >= 1");
  QuadMesh mesh;
  const int ribbons = curves.style == CurveStyle::Round ? 2 : 1;
  for (std::size_t seg = 0; seg < curves.segment_count(); ++seg) {
    const std::span<const Vec3f, 4> cp(curves.controlPoints.data() + seg * 4, 4);
    const std::span<const float, 4> w(curves.widths.data() + seg * 4, 4);
    for (int ribbon = 0; ribbon < ribbons; ++ribbon) {
      const auto base = uint32_t(mesh.positions.size());
      for (uint32_t k = 0; k <= segmentsPerSpan; ++k) {
        const float t = float(k) / float(segmentsPerSpan);
        const Vec3f p = bezier_point(cp, t);
        Vec3f tangent = bezier_tangent(cp, t);
        if (dot(tangent, tangent) == 0.f) tangent = cp[3] - cp[0];
        tangent = normalize(tangent);
        const Vec3f facing = cameraPosition ? *cameraPosition - p : Vec3f{0, 0, 1};
        Vec3f side = cross(tangent, facing);
        side = dot(side, side) > 1e-12f ? normalize(side) : any_perpendicular(tangent);
        if (ribbon == 1) side = normalize(cross(tangent, side));
        const float half = 0.5f * width_at(w, t);
        mesh.positions.push_back(p - side * half);
        mesh.positions.push_back(p + side * half);
      }
      for (uint32_t k = 0; k < segmentsPerSpan; ++k) {
        const uint32_t a = base + 2 * k;
        mesh.indices.insert(mesh.indices.end(), {a, a + 1, a + 3, a + 2});
      }
    }
  }
  return mesh;
}

} // namespace elephant::scene

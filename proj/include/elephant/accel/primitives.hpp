// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/math.hpp"

#include <cstdint>
#include <tuple>

namespace elephant::accel {

// Single-precision Moller-Trumbore. Both the BVH path and the brute-force
// reference call these kernels, so equal inputs give bit-equal hits.
struct PrimitiveHit {
  float t;
  float u, v;       // triangle barycentrics, or bilinear quad coordinates
  uint8_t subTriangle; // quads: 0 = (a,b,c), 1 = (a,c,d)
  Vec3f ng;         // unnormalized geometric normal, object space
};

inline bool intersect_triangle(const Vec3f &o, const Vec3f &d, const Vec3f &a, const Vec3f &b, const Vec3f &c,
                               float tmin, float tmax, PrimitiveHit &hit) {
  const Vec3f e1 = b - a;
  const Vec3f e2 = c - a;
  const Vec3f p = cross(d, e2);
  const float det = dot(e1, p);
  if (det == 0.f || !std::isfinite(det)) return false;
  const float inv = 1.f / det;
  const Vec3f tv = o - a;
  const float u = dot(tv, p) * inv;
  if (!(u >= 0.f && u <= 1.f)) return false;
  const Vec3f q = cross(tv, e1);
  const float v = dot(d, q) * inv;
  if (!(v >= 0.f && u + v <= 1.f)) return false;
  const float t = dot(e2, q) * inv;
  if (!(t >= tmin && t <= tmax)) return false;
  hit = {t, u, v, 0, cross(e1, e2)};
  return true;
}

// Quad (a,b,c,d) as triangles (a,b,c) and (a,c,d). The coordinate across the
// shared diagonal a-c is computed once and reused by both halves, so a ray
// through the diagonal is claimed by exactly one half (the first on ties).
inline bool intersect_quad(const Vec3f &o, const Vec3f &d, const Vec3f &a, const Vec3f &b, const Vec3f &c,
                           const Vec3f &dd, float tmin, float tmax, PrimitiveHit &hit) {
  const Vec3f tv = o - a;
  const Vec3f ac = c - a;
  const Vec3f pac = cross(d, ac);
  const float g = dot(tv, pac);
  bool found = false;

  // (a,b,c): e1 = ab, e2 = ac, u = g / det.
  {
    const Vec3f ab = b - a;
    const float det = dot(ab, pac);
    if (det != 0.f && std::isfinite(det)) {
      const float inv = 1.f / det;
      const float u = g * inv;
      if (u >= 0.f && u <= 1.f) {
        const Vec3f q = cross(tv, ab);
        const float v = dot(d, q) * inv;
        if (v >= 0.f && u + v <= 1.f) {
          const float t = dot(ac, q) * inv;
          if (t >= tmin && t <= tmax) {
            hit = {t, u + v, v, 0, cross(ab, ac)};
            found = true;
          }
        }
      }
    }
  }
  // (a,c,d): e1 = ac, e2 = ad, v = -g / det.
  {
    const Vec3f ad = dd - a;
    const Vec3f p = cross(d, ad);
    const float det = dot(ac, p);
    if (det != 0.f && std::isfinite(det)) {
      const float inv = 1.f / det;
      const float v = -g * inv;
      if (v >= 0.f && v <= 1.f) {
        const float u = dot(tv, p) * inv;
        if (u >= 0.f && u + v <= 1.f) {
          const Vec3f q = cross(tv, ac);
          const float t = dot(ad, q) * inv;
          if (t >= tmin && t <= tmax && (!found || t < hit.t)) {
            hit = {t, u, u + v, 1, cross(ac, ad)};
            found = true;
          }
        }
      }
    }
  }
  return found;
}

// Pair-merged triangle meshes keep quad ids and coordinates implicit:
// triangle 2i+k is half k of quad i.
inline void triangle_to_quad_uv(uint32_t triangle, float u, float v, float &qu, float &qv) {
  if ((triangle & 1u) == 0) {
    qu = u + v;
    qv = v;
  } else {
    qu = u;
    qv = u + v;
  }
}

// Ordering used to pick the nearest hit: smaller t, then lower ids.
inline bool hit_precedes(float t0, uint32_t i0, uint32_t g0, uint32_t p0, float t1, uint32_t i1, uint32_t g1, uint32_t p1) {
  if (t0 != t1) return t0 < t1;
  return std::tie(i0, g0, p0) < std::tie(i1, g1, p1);
}

} // namespace elephant::accel

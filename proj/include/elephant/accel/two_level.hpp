// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/accel/bvh.hpp"
#include "elephant/accel/primitives.hpp"
#include "elephant/core/math.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace elephant::accel {

enum class GeometryKind : uint8_t { Triangles, Quads };

struct AccelGeometry {
  GeometryKind kind = GeometryKind::Triangles;
  std::vector<Vec3f> positions;
  std::vector<uint32_t> indices; // 3 or 4 per primitive
  std::vector<Vec3f> normals;    // optional per-vertex, triangles only

  uint32_t primitive_count() const {
    return uint32_t(indices.size() / (kind == GeometryKind::Triangles ? 3 : 4));
  }
};

struct AccelObject {
  std::vector<AccelGeometry> geometries;
};

struct AccelInstance {
  uint32_t objectRef = 0;
  Affine3 transform;
};

struct Hit {
  float t = kInfinity;
  uint32_t instanceId = 0;
  uint32_t geomId = 0;
  uint32_t primId = 0;
  float u = 0.f, v = 0.f; // triangle barycentrics, or bilinear over the full quad
  Vec3f ng;               // world space, unit length
};

struct TraversalStats {
  uint64_t nodeVisits = 0;
  uint64_t primitiveTests = 0;
  uint64_t instanceVisits = 0;

  TraversalStats &operator+=(const TraversalStats &o) {
    nodeVisits += o.nodeVisits;
    primitiveTests += o.primitiveTests;
    instanceVisits += o.instanceVisits;
    return *this;
  }
};

// ---- primitive-level helpers shared with reference intersectors ----

Aabb primitive_bounds(const AccelGeometry &g, uint32_t prim);
bool intersect_primitive(const AccelGeometry &g, uint32_t prim, const Vec3f &o, const Vec3f &d, float tmin,
                         float tmax, PrimitiveHit &hit);

// Object-space origin and direction; the direction stays unnormalized so t is shared.
inline void object_ray(const Affine3 &inverse, const Ray &r, Vec3f &o, Vec3f &d) {
  o = inverse.point(r.origin);
  d = inverse.vector(r.direction);
}

inline Vec3f world_normal(const Affine3 &inverse, const Vec3f &ng) {
  return normalize(inverse.transpose_vector(ng));
}

class TwoLevelAccel {
public:
  struct BuildOptions {
    bool parallel = true;
  };

  TwoLevelAccel() = default;
  TwoLevelAccel(std::vector<AccelObject> objects, std::vector<AccelInstance> instances);
  TwoLevelAccel(std::vector<AccelObject> objects, std::vector<AccelInstance> instances, BuildOptions options);

  std::optional<Hit> intersect(const Ray &ray, TraversalStats *stats = nullptr) const;
  bool occluded(const Ray &ray, TraversalStats *stats = nullptr) const;

  const std::vector<AccelObject> &objects() const { return objects_; }
  const std::vector<AccelInstance> &instances() const { return instances_; }
  const Affine3 &inverse(uint32_t instanceId) const { return inverses_[instanceId]; }
  const Bvh &blas(uint32_t objectId) const { return blas_[objectId]; }
  const Bvh &tlas() const { return tlas_; }
  const Aabb &instance_bounds(uint32_t instanceId) const { return instanceBounds_[instanceId]; }
  Aabb bounds() const { return tlas_.empty() ? Aabb{} : tlas_.nodes[0].bounds; }
  const AccelGeometry &geometry(uint32_t instanceId, uint32_t geomId) const {
    return objects_[instances_[instanceId].objectRef].geometries[geomId];
  }

private:
  template <bool AnyHit>
  bool traverse(const Ray &ray, Hit *best, TraversalStats *stats) const;

  std::vector<AccelObject> objects_;
  std::vector<AccelInstance> instances_;
  std::vector<Affine3> inverses_;
  std::vector<Aabb> instanceBounds_;
  std::vector<Bvh> blas_;
  // Per object: primitiveOrder entries index into these (geomId, primId) pairs.
  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> blasPrims_;
  Bvh tlas_;
};

} // namespace elephant::accel

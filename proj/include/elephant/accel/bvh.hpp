// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/math.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace elephant::accel {

struct BuildPrimitive {
  Aabb bounds;
  Vec3f centroid;
};

// Interior nodes have count == 0 and children (left, right); leaves cover
// primitiveOrder[first, first + count).
struct BvhNode {
  Aabb bounds;
  uint32_t leftOrFirst = 0;
  uint32_t rightChild = 0;
  uint32_t count = 0;

  bool is_leaf() const { return count > 0; }
};

struct Bvh {
  std::vector<BvhNode> nodes; // root at index 0
  std::vector<uint32_t> primitiveOrder;

  bool empty() const { return nodes.empty(); }
  std::size_t leaf_count() const;
  uint32_t depth() const;
};

inline constexpr int kSahBins = 16;
inline constexpr uint32_t kMaxLeafSize = 4;
inline constexpr float kTraversalCost = 0.5f;

// Binned SAH; throws EmptyInput for N == 0.
Bvh build_bvh(std::span<const BuildPrimitive> primitives);

// Slab test, widened by a small relative slack on both sides.
struct RayBoxContext {
  Vec3f origin;
  Vec3f invDir;

  explicit RayBoxContext(const Vec3f &o, const Vec3f &d) : origin(o), invDir{1.f / d.x, 1.f / d.y, 1.f / d.z} {}

  // Returns the entry distance, or +inf when the box is missed within [tmin, tmax].
  float enter(const Aabb &b, float tmin, float tmax) const {
    float t0 = tmin, t1 = tmax;
    for (int a = 0; a < 3; ++a) {
      float n = (b.lower[a] - origin[a]) * invDir[a];
      float f = (b.upper[a] - origin[a]) * invDir[a];
      if (n > f) std::swap(n, f);
      // A NaN (origin on a slab plane, direction parallel) leaves the interval unchanged.
      n *= n > 0.f ? 1.f - 1e-5f : 1.f + 1e-5f;
      f *= f > 0.f ? 1.f + 1e-5f : 1.f - 1e-5f;
      if (n > t0) t0 = n;
      if (f < t1) t1 = f;
    }
    return t0 <= t1 ? t0 : kInfinity;
  }
};

} // namespace elephant::accel

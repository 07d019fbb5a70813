// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/accel/two_level.hpp"

#include "elephant/core/error.hpp"

#include <array>

namespace elephant::accel {

Aabb primitive_bounds(const AccelGeometry &g, uint32_t prim) {
  const uint32_t k = g.kind == GeometryKind::Triangles ? 3 : 4;
  Aabb b;
  for (uint32_t i = 0; i < k; ++i) b.extend(g.positions[g.indices[prim * k + i]]);
  const float pad = 1e-5f * std::max(max_component(b.extent()), max_component(max(b.lower, -b.lower)) +
                                                                     max_component(max(b.upper, -b.upper)));
  b.lower -= Vec3f(pad);
  b.upper += Vec3f(pad);
  return b;
}

bool intersect_primitive(const AccelGeometry &g, uint32_t prim, const Vec3f &o, const Vec3f &d, float tmin,
                         float tmax, PrimitiveHit &hit) {
  const auto &p = g.positions;
  if (g.kind == GeometryKind::Triangles) {
    const uint32_t *ix = &g.indices[prim * 3];
    return intersect_triangle(o, d, p[ix[0]], p[ix[1]], p[ix[2]], tmin, tmax, hit);
  }
  const uint32_t *ix = &g.indices[prim * 4];
  return intersect_quad(o, d, p[ix[0]], p[ix[1]], p[ix[2]], p[ix[3]], tmin, tmax, hit);
}

namespace {

// Fixed-capacity traversal stack that spills to the heap for very deep trees.
class NodeStack {
public:
  void push(uint32_t node, float t) {
    if (size_ < inline_.size()) {
      inline_[size_++] = {node, t};
    } else {
      spill_.push_back({node, t});
      ++size_;
    }
  }
  bool empty() const { return size_ == 0; }
  std::pair<uint32_t, float> pop() {
    --size_;
    if (size_ >= inline_.size()) {
      auto e = spill_.back();
      spill_.pop_back();
      return e;
    }
    return inline_[size_];
  }

private:
  std::array<std::pair<uint32_t, float>, 96> inline_;
  std::vector<std::pair<uint32_t, float>> spill_;
  std::size_t size_ = 0;
};

// Visits leaves in near-to-far order. visitLeaf returns true to stop.
template <typename Leaf>
bool walk(const Bvh &bvh, const RayBoxContext &ctx, float tmin, const float &tmax, TraversalStats *stats,
          Leaf &&visitLeaf) {
  const float t0 = ctx.enter(bvh.nodes[0].bounds, tmin, tmax);
  if (t0 == kInfinity) return false;
  NodeStack stack;
  stack.push(0, t0);
  while (!stack.empty()) {
    auto [index, tEntry] = stack.pop();
    if (tEntry > tmax) continue;
    const BvhNode &node = bvh.nodes[index];
    if (stats) ++stats->nodeVisits;
    if (node.is_leaf()) {
      if (visitLeaf(node)) return true;
      continue;
    }
    const float tl = ctx.enter(bvh.nodes[node.leftOrFirst].bounds, tmin, tmax);
    const float tr = ctx.enter(bvh.nodes[node.rightChild].bounds, tmin, tmax);
    if (tl <= tr) {
      if (tr != kInfinity) stack.push(node.rightChild, tr);
      if (tl != kInfinity) stack.push(node.leftOrFirst, tl);
    } else {
      if (tl != kInfinity) stack.push(node.leftOrFirst, tl);
      stack.push(node.rightChild, tr);
    }
  }
  return false;
}

} // namespace

TwoLevelAccel::TwoLevelAccel(std::vector<AccelObject> objects, std::vector<AccelInstance> instances)
    : TwoLevelAccel(std::move(objects), std::move(instances), BuildOptions{}) {}

TwoLevelAccel::TwoLevelAccel(std::vector<AccelObject> objects, std::vector<AccelInstance> instances,
                             BuildOptions options)
    : objects_(std::move(objects)), instances_(std::move(instances)) {
  const std::size_t objectCount = objects_.size();
  blas_.resize(objectCount);
  blasPrims_.resize(objectCount);

  auto buildObject = [&](std::size_t oi) {
    const AccelObject &obj = objects_[oi];
    std::vector<BuildPrimitive> prims;
    auto &refs = blasPrims_[oi];
    for (uint32_t g = 0; g < obj.geometries.size(); ++g) {
      const AccelGeometry &geom = obj.geometries[g];
      for (uint32_t p = 0; p < geom.primitive_count(); ++p) {
        const Aabb b = primitive_bounds(geom, p);
        prims.push_back({b, b.center()});
        refs.emplace_back(g, p);
      }
    }
    if (!prims.empty()) blas_[oi] = build_bvh(prims);
  };

  if (options.parallel) {
    // Exceptions cannot cross the OpenMP region; geometry is validated upstream.
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t oi = 0; oi < std::ptrdiff_t(objectCount); ++oi) buildObject(std::size_t(oi));
  } else {
    for (std::size_t oi = 0; oi < objectCount; ++oi) buildObject(oi);
  }

  inverses_.reserve(instances_.size());
  instanceBounds_.reserve(instances_.size());
  std::vector<BuildPrimitive> tprims;
  tprims.reserve(instances_.size());
  for (const AccelInstance &inst : instances_) {
    if (inst.objectRef >= objectCount) throw InvalidScene("instance references a missing object");
    inverses_.push_back(inst.transform.inverse());
    const Bvh &b = blas_[inst.objectRef];
    Aabb wb;
    if (!b.empty()) wb = inst.transform.transform(b.nodes[0].bounds);
    instanceBounds_.push_back(wb);
    // Instances of empty objects get a point box that no ray can enter.
    const Vec3f c = wb.empty() ? inst.transform.point({}) : wb.center();
    tprims.push_back({wb, c});
  }
  if (!tprims.empty()) tlas_ = build_bvh(tprims);
}

template <bool AnyHit>
bool TwoLevelAccel::traverse(const Ray &ray, Hit *best, TraversalStats *stats) const {
  if (tlas_.empty()) return false;
  float bestT = ray.tmax;
  bool found = false;
  uint32_t bi = 0, bg = 0, bp = 0;
  PrimitiveHit bestHit{};

  const RayBoxContext wctx(ray.origin, ray.direction);
  const bool stopped = walk(tlas_, wctx, ray.tmin, bestT, stats, [&](const BvhNode &leaf) {
    for (uint32_t k = leaf.leftOrFirst; k < leaf.leftOrFirst + leaf.count; ++k) {
      const uint32_t inst = tlas_.primitiveOrder[k];
      const uint32_t obj = instances_[inst].objectRef;
      const Bvh &blas = blas_[obj];
      if (blas.empty()) continue;
      if (stats) ++stats->instanceVisits;
      Vec3f o, d;
      object_ray(inverses_[inst], ray, o, d);
      const RayBoxContext octx(o, d);
      const auto &refs = blasPrims_[obj];
      const auto &geoms = objects_[obj].geometries;
      const bool hitAny = walk(blas, octx, ray.tmin, bestT, stats, [&](const BvhNode &bl) {
        for (uint32_t j = bl.leftOrFirst; j < bl.leftOrFirst + bl.count; ++j) {
          const auto [g, p] = refs[blas.primitiveOrder[j]];
          if (stats) ++stats->primitiveTests;
          PrimitiveHit ph;
          if (!intersect_primitive(geoms[g], p, o, d, ray.tmin, bestT, ph)) continue;
          if constexpr (AnyHit) return true;
          if (!found || hit_precedes(ph.t, inst, g, p, bestT, bi, bg, bp)) {
            found = true;
            bestT = ph.t;
            bi = inst;
            bg = g;
            bp = p;
            bestHit = ph;
          }
        }
        return false;
      });
      if (hitAny) return true;
    }
    return false;
  });
  if constexpr (AnyHit) return stopped;

  if (found && best) {
    best->t = bestT;
    best->instanceId = bi;
    best->geomId = bg;
    best->primId = bp;
    best->u = bestHit.u;
    best->v = bestHit.v;
    best->ng = world_normal(inverses_[bi], bestHit.ng);
  }
  return found;
}

std::optional<Hit> TwoLevelAccel::intersect(const Ray &ray, TraversalStats *stats) const {
  Hit h;
  if (!traverse<false>(ray, &h, stats)) return std::nullopt;
  return h;
}

bool TwoLevelAccel::occluded(const Ray &ray, TraversalStats *stats) const {
  return traverse<true>(ray, nullptr, stats);
}

} // namespace elephant::accel

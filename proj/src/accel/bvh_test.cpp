// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/accel/bvh.hpp"

#include "elephant/core/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace elephant;
using namespace elephant::accel;

namespace {

BuildPrimitive prim(const Aabb &b) { return {b, b.center()}; }

std::vector<BuildPrimitive> random_triangles(int n, uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<float> pos(-10.f, 10.f), off(-0.5f, 0.5f);
  std::vector<BuildPrimitive> out;
  for (int i = 0; i < n; ++i) {
    const Vec3f c{pos(rng), pos(rng), pos(rng)};
    Aabb b;
    for (int k = 0; k < 3; ++k) b.extend(c + Vec3f{off(rng), off(rng), off(rng)});
    out.push_back(prim(b));
  }
  return out;
}

} // namespace

TEST_CASE("single primitive is a single leaf") {
  const Aabb b{{0, 0, 0}, {1, 2, 3}};
  const std::vector<BuildPrimitive> p{prim(b)};
  const Bvh bvh = build_bvh(p);
  REQUIRE(bvh.nodes.size() == 1);
  CHECK(bvh.nodes[0].is_leaf());
  CHECK(bvh.nodes[0].bounds == b);
  CHECK(bvh.primitiveOrder == std::vector<uint32_t>{0});
}

TEST_CASE("two disjoint primitives split into two leaves") {
  const std::vector<BuildPrimitive> p{prim({{0, 0, 0}, {1, 1, 1}}), prim({{5, 0, 0}, {6, 1, 1}})};
  const Bvh bvh = build_bvh(p);
  REQUIRE(bvh.nodes.size() == 3);
  const BvhNode &root = bvh.nodes[0];
  CHECK_FALSE(root.is_leaf());
  CHECK(bvh.nodes[root.leftOrFirst].count == 1);
  CHECK(bvh.nodes[root.rightChild].count == 1);
}

TEST_CASE("empty input throws") {
  CHECK_THROWS_AS(build_bvh(std::span<const BuildPrimitive>{}), EmptyInput);
}

TEST_CASE("containment holds for every node of a random build") {
  const auto prims = random_triangles(1000, 17);
  const Bvh bvh = build_bvh(prims);

  std::vector<uint32_t> sorted = bvh.primitiveOrder;
  std::sort(sorted.begin(), sorted.end());
  for (uint32_t i = 0; i < sorted.size(); ++i) REQUIRE(sorted[i] == i);

  std::vector<int> covered(prims.size(), 0);
  for (const BvhNode &n : bvh.nodes) {
    if (n.is_leaf()) {
      CHECK(n.count <= kMaxLeafSize);
      for (uint32_t k = n.leftOrFirst; k < n.leftOrFirst + n.count; ++k) {
        CHECK(n.bounds.contains(prims[bvh.primitiveOrder[k]].bounds));
        ++covered[bvh.primitiveOrder[k]];
      }
    } else {
      CHECK(n.bounds.contains(bvh.nodes[n.leftOrFirst].bounds));
      CHECK(n.bounds.contains(bvh.nodes[n.rightChild].bounds));
    }
  }
  CHECK(std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; }));
}

TEST_CASE("build is deterministic and tolerates coincident primitives") {
  const auto prims = random_triangles(500, 3);
  const Bvh a = build_bvh(prims), b = build_bvh(prims);
  CHECK(a.primitiveOrder == b.primitiveOrder);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) CHECK(a.nodes[i].bounds == b.nodes[i].bounds);

  std::vector<BuildPrimitive> same(100, prim({{0, 0, 0}, {1, 1, 1}}));
  const Bvh c = build_bvh(same);
  for (const BvhNode &n : c.nodes)
    if (n.is_leaf()) CHECK(n.count <= kMaxLeafSize);
}

TEST_CASE("slab test") {
  const Aabb box{{-1, -1, -1}, {1, 1, 1}};
  const RayBoxContext r({0, 0, -5}, {0, 0, 1});
  CHECK(r.enter(box, 0.f, kInfinity) == doctest::Approx(4.f).epsilon(1e-4));
  CHECK(r.enter(box, 0.f, 3.f) == kInfinity);
  const RayBoxContext miss({3, 0, -5}, {0, 0, 1});
  CHECK(miss.enter(box, 0.f, kInfinity) == kInfinity);
  // Origin on a slab plane with a parallel direction.
  const RayBoxContext edge({1, 0, -5}, {0, 0, 1});
  CHECK(edge.enter(box, 0.f, kInfinity) < kInfinity);
}

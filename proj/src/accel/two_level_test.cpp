// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/accel/two_level.hpp"

#include "brute_force.hpp"

#include <doctest.h>

#include <random>

using namespace elephant;
using namespace elephant::accel;

namespace {

AccelGeometry unit_triangle() {
  AccelGeometry g;
  g.positions = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  g.indices = {0, 1, 2};
  return g;
}

AccelGeometry unit_quad() {
  AccelGeometry g;
  g.kind = GeometryKind::Quads;
  g.positions = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  g.indices = {0, 1, 2, 3};
  return g;
}

AccelGeometry triangle_soup(int n, std::mt19937 &rng) {
  std::uniform_real_distribution<float> pos(-5.f, 5.f), off(-0.6f, 0.6f);
  AccelGeometry g;
  for (int i = 0; i < n; ++i) {
    const Vec3f c{pos(rng), pos(rng), pos(rng)};
    for (int k = 0; k < 3; ++k) {
      g.positions.push_back(c + Vec3f{off(rng), off(rng), off(rng)});
      g.indices.push_back(uint32_t(g.positions.size() - 1));
    }
  }
  return g;
}

Ray random_ray(std::mt19937 &rng, float extent) {
  std::uniform_real_distribution<float> U(-1.f, 1.f);
  Ray r;
  r.origin = Vec3f{U(rng), U(rng), U(rng)} * extent;
  Vec3f d;
  do d = {U(rng), U(rng), U(rng)};
  while (dot(d, d) < 1e-4f || dot(d, d) > 1.f);
  // Aim through the middle of the scene half the time.
  if (U(rng) > 0.f) d = Vec3f{U(rng), U(rng), U(rng)} * (extent * 0.3f) - r.origin;
  r.direction = d;
  return r;
}

void expect_same(const std::optional<Hit> &a, const std::optional<Hit> &b) {
  REQUIRE(a.has_value() == b.has_value());
  if (!a) return;
  CHECK(a->t == b->t);
  CHECK(a->instanceId == b->instanceId);
  CHECK(a->geomId == b->geomId);
  CHECK(a->primId == b->primId);
  CHECK(a->u == b->u);
  CHECK(a->v == b->v);
}

} // namespace

TEST_CASE("axis ray against the unit triangle") {
  TwoLevelAccel accel({{{unit_triangle()}}}, {{0, Affine3::identity()}});
  const auto h = accel.intersect({{0.25f, 0.5f, 5.f}, {0, 0, -1}});
  REQUIRE(h);
  CHECK(h->t == doctest::Approx(5.f).epsilon(1e-6));
  CHECK(h->u == doctest::Approx(0.25f).epsilon(1e-6));
  CHECK(h->v == doctest::Approx(0.5f).epsilon(1e-6));
  CHECK(length(h->ng) == doctest::Approx(1.f).epsilon(1e-5));
  CHECK(std::abs(h->ng.z) == doctest::Approx(1.f));
  CHECK_FALSE(accel.intersect({{0.75f, 0.5f, 5.f}, {0, 0, -1}}));
  CHECK_FALSE(accel.intersect({{0.25f, 0.5f, 5.f}, {0, 0, -1}, 0.f, 4.f}));
  CHECK_FALSE(accel.intersect({{0.25f, 0.5f, 5.f}, {0, 0, 1}}));
}

TEST_CASE("translated instances share primitive ids") {
  TwoLevelAccel accel({{{unit_triangle()}}}, {{0, Affine3::identity()}, {0, Affine3::translate({5, 0, -2})}});
  const auto a = accel.intersect({{0.25f, 0.25f, 5.f}, {0, 0, -1}});
  const auto b = accel.intersect({{5.25f, 0.25f, 5.f}, {0, 0, -1}});
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->primId == b->primId);
  CHECK(a->instanceId == 0);
  CHECK(b->instanceId == 1);
  CHECK(b->t == doctest::Approx(a->t + 2.f).epsilon(1e-6));
}

TEST_CASE("non-uniform scale keeps world-space t") {
  const Affine3 xf = Affine3::translate({0, 0, 1}) * Affine3::scale({3, 1, 7});
  TwoLevelAccel accel({{{unit_quad()}}}, {{0, xf}, {0, Affine3::translate({0, 0, 2})}});
  const Ray r{{0.5f, 0.5f, 10.f}, {0, 0, -2}};
  const auto h = accel.intersect(r);
  REQUIRE(h);
  CHECK(h->instanceId == 1);
  CHECK(h->t == doctest::Approx(4.f).epsilon(1e-6));
  const auto behind = accel.intersect({{0.5f, 0.5f, 1.5f}, {0, 0, -2}});
  REQUIRE(behind);
  CHECK(behind->instanceId == 0);
  CHECK(behind->t == doctest::Approx(0.25f).epsilon(1e-6));
  CHECK(length(behind->ng) == doctest::Approx(1.f).epsilon(1e-5));
}

TEST_CASE("quad hits report bilinear coordinates") {
  TwoLevelAccel accel({{{unit_quad()}}}, {{0, Affine3::translate({2, 0, 0}) * Affine3::scale({2, 4, 1})}});
  const auto c = accel.intersect({{3.f, 2.f, 1.f}, {0, 0, -1}});
  REQUIRE(c);
  CHECK(c->u == doctest::Approx(0.5f));
  CHECK(c->v == doctest::Approx(0.5f));
  for (float u : {0.1f, 0.3f, 0.8f}) {
    for (float v : {0.05f, 0.6f, 0.95f}) {
      const auto h = accel.intersect({{2.f + 2.f * u, 4.f * v, 1.f}, {0, 0, -1}});
      REQUIRE(h);
      CHECK(h->u == doctest::Approx(u).epsilon(1e-5));
      CHECK(h->v == doctest::Approx(v).epsilon(1e-5));
    }
  }
}

TEST_CASE("rays through the quad diagonal report one hit") {
  TwoLevelAccel accel({{{unit_quad()}}}, {{0, Affine3::identity()}});
  for (int i = 1; i < 64; ++i) {
    const float s = float(i) / 64.f;
    const auto h = accel.intersect({{s, s, 1.f}, {0, 0, -1}});
    REQUIRE(h);
    CHECK(h->u == doctest::Approx(s).epsilon(1e-6));
    CHECK(h->v == doctest::Approx(s).epsilon(1e-6));
  }
}

TEST_CASE("ties on t resolve to the lowest ids") {
  // Two coplanar copies of one triangle, plus a duplicate instance.
  AccelGeometry g = unit_triangle();
  g.indices = {0, 1, 2, 0, 1, 2};
  TwoLevelAccel accel({{{g, g}}}, {{0, Affine3::identity()}, {0, Affine3::identity()}});
  const auto h = accel.intersect({{0.2f, 0.2f, 1.f}, {0, 0, -1}});
  REQUIRE(h);
  CHECK(h->instanceId == 0);
  CHECK(h->geomId == 0);
  CHECK(h->primId == 0);
}

TEST_CASE("empty scenes and empty objects") {
  TwoLevelAccel none;
  CHECK_FALSE(none.intersect({{0, 0, 0}, {0, 0, 1}}));
  CHECK_FALSE(none.occluded({{0, 0, 0}, {0, 0, 1}}));
  TwoLevelAccel hollow({AccelObject{}, {{unit_triangle()}}}, {{0, Affine3::identity()}, {1, Affine3::identity()}});
  CHECK(hollow.tlas().leaf_count() >= 1);
  const auto h = hollow.intersect({{0.1f, 0.1f, 1.f}, {0, 0, -1}});
  REQUIRE(h);
  CHECK(h->instanceId == 1);
}

TEST_CASE("random rays match brute force over a triangle soup") {
  std::mt19937 rng(99);
  TwoLevelAccel accel({{{triangle_soup(1000, rng)}}}, {{0, Affine3::identity()}});
  int hits = 0;
  for (int i = 0; i < 10000; ++i) {
    const Ray r = random_ray(rng, 8.f);
    const auto a = accel.intersect(r);
    expect_same(a, testing::brute_force_intersect(accel, r));
    CHECK(accel.occluded(r) == a.has_value());
    if (a) {
      ++hits;
      CHECK(a->t >= r.tmin);
      CHECK(a->t <= r.tmax);
    }
  }
  CHECK(hits > 1000);
}

TEST_CASE("instance transforms and world bounds") {
  std::mt19937 rng(5);
  std::vector<AccelInstance> instances;
  std::uniform_real_distribution<float> U(-1.f, 1.f);
  for (int i = 0; i < 20; ++i) {
    const Affine3 xf = Affine3::translate({U(rng) * 6, U(rng) * 6, U(rng) * 6}) *
                       Affine3::rotate(U(rng) * 180.f, {U(rng), U(rng), 1.f}) *
                       Affine3::scale({1.f + U(rng) * 0.5f, 1.f, 0.6f + U(rng) * 0.3f});
    instances.push_back({uint32_t(i % 2), xf});
  }
  TwoLevelAccel accel({{{triangle_soup(80, rng)}}, {{triangle_soup(40, rng), unit_quad()}}}, instances);
  CHECK(accel.tlas().primitiveOrder.size() == 20);
  for (uint32_t i = 0; i < 20; ++i) {
    const Aabb expected = instances[i].transform.transform(accel.blas(instances[i].objectRef).nodes[0].bounds);
    CHECK(accel.instance_bounds(i) == expected);
  }
  for (int i = 0; i < 3000; ++i) {
    const Ray r = random_ray(rng, 9.f);
    const auto a = accel.intersect(r);
    expect_same(a, testing::brute_force_intersect(accel, r));
    CHECK(accel.occluded(r) == a.has_value());
  }
}

TEST_CASE("serial and parallel builds agree") {
  std::mt19937 rng(8);
  std::vector<AccelObject> objects;
  for (int i = 0; i < 6; ++i) objects.push_back({{triangle_soup(100, rng)}});
  std::vector<AccelInstance> inst;
  for (uint32_t i = 0; i < 6; ++i) inst.push_back({i, Affine3::translate({float(i), 0, 0})});
  TwoLevelAccel a(objects, inst, {true}), b(objects, inst, {false});
  for (uint32_t o = 0; o < 6; ++o) CHECK(a.blas(o).primitiveOrder == b.blas(o).primitiveOrder);
  TraversalStats stats;
  for (int i = 0; i < 200; ++i) {
    const Ray r = random_ray(rng, 6.f);
    expect_same(a.intersect(r, &stats), b.intersect(r));
  }
  CHECK(stats.nodeVisits > 0);
  CHECK(stats.primitiveTests > 0);
}

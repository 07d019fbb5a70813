// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/shade/lights.hpp"

#include "temp_dir.hpp"

#include <doctest.h>

#include <random>

using namespace elephant;
using namespace elephant::shade;

namespace {

// Unit square at height 1 centered over the origin, emitting downwards.
ingest::LightDesc unit_quad_above() {
  ingest::LightDesc d;
  d.kind = ingest::LightKind::QuadArea;
  d.corners = {Vec3f{-0.5f, -0.5f, 1.f}, Vec3f{-0.5f, 0.5f, 1.f}, Vec3f{0.5f, 0.5f, 1.f}, Vec3f{0.5f, -0.5f, 1.f}};
  d.radiance = Rgb{3.f};
  return d;
}

} // namespace

TEST_CASE("unit quad light directly overhead") {
  const Light l = make_light(unit_quad_above());
  CHECK(l.quad.area == doctest::Approx(1.f));
  CHECK(l.quad.normal.z == doctest::Approx(-1.f));
  // The diagonal midpoint of triangle (c0,c1,c2) is the quad center.
  const LightSample s = sample_light(l, {0, 0, 0}, 0.25f * 0.5f, 1.f);
  CHECK(s.distance == doctest::Approx(1.f));
  CHECK(s.pdf == doctest::Approx(1.f));
  CHECK(s.wi.z == doctest::Approx(1.f));
  CHECK(s.radiance == Rgb{3.f});
}

TEST_CASE("quad samples cover the light uniformly") {
  const Light l = make_light(unit_quad_above());
  std::mt19937 rng(7);
  std::uniform_real_distribution<float> u(0.f, 1.f);
  int counts[4][4] = {};
  constexpr int n = 160000;
  for (int i = 0; i < n; ++i) {
    const LightSample s = sample_light(l, {0, 0, 0}, u(rng), u(rng));
    const Vec3f x = s.wi * s.distance;
    const int cx = std::clamp(int((x.x + 0.5f) * 4), 0, 3), cy = std::clamp(int((x.y + 0.5f) * 4), 0, 3);
    ++counts[cx][cy];
    const float expected = s.distance * s.distance / std::abs(s.wi.z);
    CHECK(s.pdf == doctest::Approx(expected).epsilon(1e-4));
  }
  for (auto &row : counts)
    for (int c : row) CHECK(c == doctest::Approx(n / 16.0).epsilon(0.03));
}

TEST_CASE("quad light seen from behind is dark") {
  const Light l = make_light(unit_quad_above());
  const LightSample s = sample_light(l, {0, 0, 2}, 0.3f, 0.6f);
  CHECK(s.radiance == Rgb{0.f});
  CHECK(s.pdf >= 0.f);
  Ray r{{0.1f, 0.1f, 2.f}, {0, 0, -1}};
  const auto hit = intersect_quad_light(l.quad, r);
  REQUIRE(hit.has_value());
  CHECK(hit->radiance == Rgb{0.f});
}

TEST_CASE("ray hits on a quad light report the sampling density") {
  const Light l = make_light(unit_quad_above());
  std::mt19937 rng(9);
  std::uniform_real_distribution<float> u(0.f, 1.f);
  for (int i = 0; i < 100; ++i) {
    const Vec3f p{u(rng) - 0.5f, u(rng) - 0.5f, -u(rng)};
    const LightSample s = sample_light(l, p, u(rng), u(rng));
    Ray r{p, s.wi};
    const auto hit = intersect_quad_light(l.quad, r);
    REQUIRE(hit.has_value());
    CHECK(hit->t == doctest::Approx(s.distance).epsilon(1e-4));
    CHECK(hit->pdf == doctest::Approx(s.pdf).epsilon(1e-3));
    CHECK(hit->radiance == s.radiance);
  }
  CHECK_FALSE(intersect_quad_light(l.quad, Ray{{2.f, 0.f, 0.f}, {0, 0, 1}}).has_value());
}

TEST_CASE("constant environment") {
  ingest::LightDesc d;
  d.kind = ingest::LightKind::Environment;
  d.radiance = Rgb{0.7f, 0.2f, 1.5f};
  const Light l = make_light(d);
  std::mt19937 rng(13);
  std::uniform_real_distribution<float> u(0.f, 1.f);
  double irradiance = 0;
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) {
    const LightSample s = sample_light(l, {0, 0, 0}, u(rng), u(rng));
    CHECK(s.radiance == d.radiance);
    CHECK(s.pdf == doctest::Approx(1.f / (4.f * kPi)));
    CHECK(length(s.wi) == doctest::Approx(1.f));
    if (s.wi.z > 0.f) irradiance += s.radiance.x * s.wi.z / s.pdf;
  }
  irradiance /= n;
  CHECK(irradiance == doctest::Approx(kPi * 0.7).epsilon(0.02));
  CHECK(eval_environment(l.environment, normalize(Vec3f{1, 2, 3})) == d.radiance);
}

TEST_CASE("lat-long image halves map to longitude halves") {
  testing::TempDir dir;
  ImageRgb img{2, 1};
  img.at(0, 0) = Rgb{1.f, 0.f, 0.f};
  img.at(1, 0) = Rgb{0.f, 0.f, 1.f};
  write_pfm(img, dir / "env.pfm");
  ingest::LightDesc d;
  d.kind = ingest::LightKind::Environment;
  d.imagePath = "env.pfm";
  d.scale = 2.f;
  const Light l = make_light(d, dir.path());
  CHECK(eval_environment(l.environment, {-1, 0, 0}) == Rgb{2.f, 0.f, 0.f});
  CHECK(eval_environment(l.environment, {1, 0, 0}) == Rgb{0.f, 0.f, 2.f});
  // Wraparound seam behind the viewer blends both texels.
  const Rgb seam = eval_environment(l.environment, {0, 0, 1});
  CHECK(seam.x == doctest::Approx(1.f));
  CHECK(seam.z == doctest::Approx(1.f));
  // Latitude clamps at the poles.
  CHECK(eval_environment(l.environment, {0, 1, 0}).y == 0.f);
}

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/shade/bsdf.hpp"

#include "bsdf_quadrature.hpp"

#include <doctest.h>

#include <array>
#include <random>

using namespace elephant;
using namespace elephant::shade;
using elephant::testing::direction_from_cos;
using elephant::testing::stratified_albedo;
using elephant::testing::Vmf;

namespace {

DisneyMaterial random_material(std::mt19937 &rng) {
  std::uniform_real_distribution<float> u(0.f, 1.f);
  DisneyMaterial m;
  m.metallic = u(rng);
  m.roughness = u(rng);
  m.specular = u(rng);
  m.specularTint = u(rng);
  m.sheen = u(rng);
  m.sheenTint = u(rng);
  m.clearcoat = u(rng);
  m.clearcoatGloss = u(rng);
  return m;
}

Vec3f random_upper(std::mt19937 &rng, float minCos = 0.02f) {
  std::uniform_real_distribution<float> u(0.f, 1.f);
  return direction_from_cos(minCos + (1.f - minCos) * u(rng), 2.f * kPi * u(rng));
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30}); }

} // namespace

TEST_CASE("near-mirror metal reflects within half a degree with Fresnel weight") {
  DisneyMaterial m;
  m.metallic = 1.f;
  m.roughness = 1e-3f;
  const Rgb base{0.9f, 0.6f, 0.3f};
  const Vec3f wo{0, 0, 1};
  std::mt19937 rng(3);
  std::uniform_real_distribution<float> u(0.f, 1.f);
  for (int i = 0; i < 200; ++i) {
    const auto s = sample_bsdf(m, wo, u(rng), u(rng), u(rng), base);
    REQUIRE(s.has_value());
    const float angle = std::acos(std::clamp(s->wi.z, -1.f, 1.f)) * 180.f / kPi;
    CHECK(angle < 0.5f);
    const Rgb w = s->f * (s->wi.z / s->pdf);
    CHECK(w.x == doctest::Approx(base.x).epsilon(0.01));
    CHECK(w.y == doctest::Approx(base.y).epsilon(0.01));
    CHECK(w.z == doctest::Approx(base.z).epsilon(0.01));
  }
}

TEST_CASE("rough white dielectric preserves energy under stratified quadrature") {
  DisneyMaterial m;
  m.metallic = 0.f;
  m.roughness = 1.f;
  for (float mu : {0.2f, 0.6f, 1.f}) {
    const auto a = stratified_albedo(m, direction_from_cos(mu, 0.3f), Rgb{1.f}, 1000, 11);
    for (double c : a) {
      CHECK(c >= 0.98);
      CHECK(c <= 1.001);
    }
  }
}

TEST_CASE("white furnace across metallic and roughness") {
  for (float metallic : {0.f, 1.f}) {
    for (float roughness : {0.f, 0.5f, 1.f}) {
      DisneyMaterial m;
      m.metallic = metallic;
      m.roughness = roughness;
      for (float mu : {0.1f, 0.7f}) {
        const auto a = stratified_albedo(m, direction_from_cos(mu, 1.f), Rgb{1.f}, 400, 5);
        CAPTURE(metallic);
        CAPTURE(roughness);
        CAPTURE(mu);
        for (double c : a) {
          CHECK(c >= 0.98);
          CHECK(c <= 1.003); // 1.6e5 samples; the 1e6-sample bound is checked by the acceptance run
        }
      }
    }
  }
}

TEST_CASE("random materials never exceed unit albedo") {
  std::mt19937 rng(17);
  for (int i = 0; i < 20; ++i) {
    const DisneyMaterial m = random_material(rng);
    std::uniform_real_distribution<float> u(0.f, 1.f);
    const Rgb base{u(rng), u(rng), u(rng)};
    const Vec3f wo = random_upper(rng, 0.05f);
    const auto a = stratified_albedo(m, wo, base, 300, uint32_t(i));
    for (double c : a) CHECK(c <= 1.003);
  }
}

TEST_CASE("reciprocity over random triples") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<float> u(0.f, 1.f);
  for (int i = 0; i < 1000; ++i) {
    const DisneyMaterial m = random_material(rng);
    const Rgb base{u(rng), u(rng), u(rng)};
    const Vec3f a = random_upper(rng), b = random_upper(rng);
    const Rgb fab = eval_bsdf(m, a, b, base).f;
    const Rgb fba = eval_bsdf(m, b, a, base).f;
    for (int c = 0; c < 3; ++c) CHECK(rel_diff(fab[c], fba[c]) <= 1e-5);
  }
}

TEST_CASE("sampled values agree with evaluation") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<float> u(0.f, 1.f);
  int produced = 0;
  for (int i = 0; i < 2000; ++i) {
    const DisneyMaterial m = random_material(rng);
    const Rgb base{u(rng), u(rng), u(rng)};
    const Vec3f wo = random_upper(rng);
    const auto s = sample_bsdf(m, wo, u(rng), u(rng), u(rng), base);
    if (!s) continue;
    ++produced;
    const BsdfEval e = eval_bsdf(m, wo, s->wi, base);
    CHECK(rel_diff(e.pdf, s->pdf) <= 1e-5);
    for (int c = 0; c < 3; ++c) CHECK(rel_diff(e.f[c], s->f[c]) <= 1e-5);
    CHECK(s->pdf > 0.f);
    CHECK(s->f.x >= 0.f);
    CHECK(s->f.y >= 0.f);
    CHECK(s->f.z >= 0.f);
  }
  CHECK(produced > 1900);
}

TEST_CASE("pdf integrates to one") {
  // Defensive mixture proposal: uniform sphere plus vMF lobes of many widths around the
  // mirror direction and its reflection through the horizon.
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  constexpr int kScales = 14;
  constexpr int kSamples = 100000;
  for (int set = 0; set < 100; ++set) {
    const DisneyMaterial m = random_material(rng);
    const Rgb base{float(u(rng)), float(u(rng)), float(u(rng))};
    const Vec3f wo = random_upper(rng, 0.05f);
    const std::array<double, 3> mirror{-double(wo.x), -double(wo.y), double(wo.z)};
    const std::array<double, 3> folded{-double(wo.x), -double(wo.y), -double(wo.z)};
    std::vector<Vmf> lobes;
    for (int k = 0; k < kScales; ++k) {
      const double kappa = std::pow(10.0, 0.25 + k);
      lobes.push_back({mirror, kappa});
      lobes.push_back({folded, kappa});
    }
    const double wUniform = 0.2, wLobe = 0.8 / double(lobes.size());
    double sum = 0;
    for (int i = 0; i < kSamples; ++i) {
      const double pick = u(rng);
      Vec3f x;
      if (pick < wUniform) {
        const double z = 1 - 2 * u(rng), phi = 2 * M_PI * u(rng), r = std::sqrt(std::max(0.0, 1 - z * z));
        x = {float(r * std::cos(phi)), float(r * std::sin(phi)), float(z)};
      } else {
        const auto idx = std::min(lobes.size() - 1, std::size_t((pick - wUniform) / wLobe));
        x = lobes[idx].sample(u(rng), u(rng));
      }
      double q = wUniform / (4 * M_PI);
      for (const Vmf &l : lobes) q += wLobe * l.pdf(x);
      if (x.z <= 0.f) continue;
      sum += eval_bsdf(m, wo, x, base).pdf / q;
    }
    const double integral = sum / kSamples;
    CAPTURE(set);
    CAPTURE(m.roughness);
    CAPTURE(m.clearcoatGloss);
    CHECK(integral == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("lower hemisphere is black") {
  DisneyMaterial m;
  const BsdfEval e = eval_bsdf(m, {0, 0, 1}, normalize(Vec3f{0.3f, 0.f, -1.f}), Rgb{1.f});
  CHECK(e.f == Rgb{0.f});
  CHECK(e.pdf == 0.f);
  CHECK_FALSE(sample_bsdf(m, normalize(Vec3f{0.f, 0.2f, -1.f}), 0.5f, 0.5f, 0.5f, Rgb{1.f}).has_value());
}

TEST_CASE("smooth dielectric interface") {
  CHECK(fresnel_dielectric(1.f, 1.5f) == doctest::Approx(0.04f).epsilon(1e-4));
  // Beyond the critical angle from inside, everything reflects.
  const float critical = std::asin(1.f / 1.5f);
  const Vec3f inside = direction_from_cos(-std::cos(critical + 0.1f), 0.f);
  CHECK(fresnel_dielectric(inside.z, 1.5f) == 1.f);
  const DeltaSample r = sample_smooth_dielectric(1.5f, inside, 0.999f, Rgb{1.f});
  CHECK(r.lobe == Lobe::DeltaReflection);
  CHECK(r.wi.z == doctest::Approx(inside.z));

  const Vec3f wo = direction_from_cos(std::cos(0.6f), 1.f);
  const DeltaSample t = sample_smooth_dielectric(1.5f, wo, 0.999f, Rgb{0.5f});
  REQUIRE(t.lobe == Lobe::DeltaTransmission);
  CHECK(t.wi.z < 0.f);
  const float sinI = std::sqrt(1.f - wo.z * wo.z), sinT = std::sqrt(1.f - t.wi.z * t.wi.z);
  CHECK(sinI == doctest::Approx(1.5f * sinT).epsilon(1e-4));
  // Transmitted direction stays in the plane of incidence, on the far side.
  CHECK(t.wi.x * wo.x + t.wi.y * wo.y < 0.f);
  CHECK(t.weight == Rgb{0.5f});
}

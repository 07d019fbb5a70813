// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/image.hpp"
#include "elephant/core/math.hpp"
#include "elephant/ingest/scene_desc.hpp"

#include <array>
#include <filesystem>
#include <optional>

namespace elephant::shade {

// Planar quad emitter, split into triangles (c0,c1,c2) and (c0,c2,c3) for sampling.
struct QuadLight {
  std::array<Vec3f, 4> corners{};
  Vec3f normal{0.f, 0.f, 1.f}; // unit, emitting side
  float area = 0.f;
  float firstTriangleArea = 0.f;
  Rgb radiance{0.f};
};

// Lat-long image, or a constant when the image is empty.
struct EnvironmentLight {
  Rgb radiance{1.f};
  ImageRgb image;
  float scale = 1.f;
};

struct Light {
  ingest::LightKind kind = ingest::LightKind::Environment;
  QuadLight quad;
  EnvironmentLight environment;
};

struct LightSample {
  Vec3f wi;                  // unit, towards the light
  float distance = kInfinity;
  Rgb radiance{0.f};
  float pdf = 0.f; // solid angle
};

// Relative image paths resolve against baseDir.
Light make_light(const ingest::LightDesc &desc, const std::filesystem::path &baseDir = {});
QuadLight make_quad_light(const std::array<Vec3f, 4> &corners, const Rgb &radiance);

LightSample sample_light(const Light &light, const Vec3f &p, float u1, float u2);

Rgb eval_environment(const EnvironmentLight &env, const Vec3f &direction);
// Longitude/latitude coordinates in [0,1]^2 of a unit direction.
std::array<float, 2> direction_to_latlong(const Vec3f &direction);

// Solid-angle density of sampling direction wi at p towards a point at distance dist on the quad.
float quad_light_pdf(const QuadLight &light, const Vec3f &wi, float dist);

struct QuadLightHit {
  float t;
  Rgb radiance; // zero from behind
  float pdf;    // solid angle density of sample_light for this direction
};
std::optional<QuadLightHit> intersect_quad_light(const QuadLight &light, const Ray &ray);

inline constexpr float kUniformSpherePdf = 1.f / (4.f * kPi);

} // namespace elephant::shade

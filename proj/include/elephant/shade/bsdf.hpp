// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/math.hpp"
#include "elephant/ingest/scene_desc.hpp"

#include <cstdint>
#include <optional>

namespace elephant::shade {

using ingest::DisneyMaterial;

enum class Lobe : uint8_t { Diffuse, Specular, Clearcoat, DeltaReflection, DeltaTransmission };

struct BsdfEval {
  Rgb f;     // per steradian, cosine not included
  float pdf; // solid angle
};

struct BsdfSample {
  Vec3f wi;
  Rgb f;
  float pdf;
  Lobe lobe;
};

// Directions are unit vectors in the shading frame (normal = +z).
// Reflection only: wi or wo below the surface gives f = 0, pdf = 0.
BsdfEval eval_bsdf(const DisneyMaterial &m, const Vec3f &wo, const Vec3f &wi, const Rgb &baseColor);

// Returns the sampled direction together with eval_bsdf's value at it.
std::optional<BsdfSample> sample_bsdf(const DisneyMaterial &m, const Vec3f &wo, float u1, float u2, float uLobe,
                                      const Rgb &baseColor);

// Lobe selection probabilities used by sample_bsdf, in the order diffuse, specular, clearcoat.
std::array<float, 3> lobe_probabilities(const DisneyMaterial &m, const Vec3f &wo, const Rgb &baseColor);

// Smooth dielectric interface for materials flagged `dielectric`. Works from either
// side; `weight` is the path throughput multiplier of the delta lobe.
struct DeltaSample {
  Vec3f wi;
  Rgb weight;
  Lobe lobe;
};
DeltaSample sample_smooth_dielectric(float ior, const Vec3f &wo, float uLobe, const Rgb &tint);

float fresnel_dielectric(float cosThetaI, float eta);

} // namespace elephant::shade

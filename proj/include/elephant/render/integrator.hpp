// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/accel/two_level.hpp"
#include "elephant/render/profile.hpp"
#include "elephant/render/sampler.hpp"
#include "elephant/render/world.hpp"

#include <cstdint>

namespace elephant::render {

enum class RenderMode : uint16_t { PathTrace = 0, PrimId, GeomId, InstanceId, CostHeat, Albedo, Normal };

const char *mode_name(RenderMode m);
// Accepts the names printed by mode_name; throws Error otherwise.
RenderMode parse_mode(std::string_view name);

inline constexpr float kBackgroundGray = 0.1f;

struct PathContext {
  ThreadProfiler *profiler = nullptr;
  accel::TraversalStats *traversal = nullptr;
  uint64_t fireflies = 0;
};

struct PathResult {
  Rgb radiance{0.f};
  Rgb albedo{0.f}; // first-hit base color
  Rgb normal{0.f}; // first-hit shading normal, facing the ray
  uint32_t rays = 0;
};

// Unidirectional path tracing with next-event estimation and MIS (power
// heuristic). maxDepth counts scattering vertices; 1 = direct lighting only.
PathResult trace_path(const World &world, Sampler &sampler, const Ray &ray, uint32_t maxDepth, PathContext &ctx);

// Pseudo-color of a hit id; a miss uses kBackgroundGray.
Rgb id_color(uint64_t id);
// GeomId colors by World::geometry_index, so instances of one object share colors.
Rgb debug_shade(const World &world, const std::optional<accel::Hit> &hit, RenderMode mode);

// Dark-to-light ramp for t in [0,1].
Rgb heat_color(float t);

// Surface data derived from a hit.
struct SurfacePoint {
  Vec3f p;
  Vec3f ng;      // unit, facing the incoming ray
  Vec3f ns;      // unit shading normal on the same side as ng
  bool frontFace; // ray arrived on the side of the authored normal
  Rgb baseColor;
  const ingest::DisneyMaterial *material;
};
SurfacePoint surface_point(const World &world, const Ray &ray, const accel::Hit &hit, ThreadProfiler *profiler);

} // namespace elephant::render

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "brute_force.hpp"

namespace elephant::testing {

std::optional<accel::Hit> brute_force_intersect(const accel::TwoLevelAccel &accel, const Ray &ray) {
  std::optional<accel::Hit> best;
  accel::PrimitiveHit bestPrim{};
  const auto &instances = accel.instances();
  for (uint32_t i = 0; i < instances.size(); ++i) {
    Vec3f o, d;
    accel::object_ray(accel.inverse(i), ray, o, d);
    const auto &geoms = accel.objects()[instances[i].objectRef].geometries;
    for (uint32_t g = 0; g < geoms.size(); ++g) {
      for (uint32_t p = 0; p < geoms[g].primitive_count(); ++p) {
        accel::PrimitiveHit ph;
        if (!accel::intersect_primitive(geoms[g], p, o, d, ray.tmin, ray.tmax, ph)) continue;
        if (!best || accel::hit_precedes(ph.t, i, g, p, best->t, best->instanceId, best->geomId, best->primId)) {
          best = accel::Hit{ph.t, i, g, p, ph.u, ph.v, {}};
          bestPrim = ph;
        }
      }
    }
  }
  if (best) best->ng = accel::world_normal(accel.inverse(best->instanceId), bestPrim.ng);
  return best;
}

} // namespace elephant::testing

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/scene/stats.hpp"

#include <bit>
#include <fmt/format.h>
#include <vector>

namespace elephant::scene {

StatsReport scene_stats(const ingest::SceneDesc &scene) {
  struct PerObject {
    uint64_t triangles = 0, quads = 0, curves = 0;
  };
  std::vector<PerObject> per(scene.objects.size());
  StatsReport r;
  r.uniqueObjects = scene.objects.size();
  for (std::size_t o = 0; o < scene.objects.size(); ++o) {
    r.uniqueShapes += scene.objects[o].shapes.size();
    for (const auto &s : scene.objects[o].shapes) {
      if (const auto *t = std::get_if<TriangleMesh>(&s.geometry))
        per[o].triangles += t->triangle_count();
      else if (const auto *q = std::get_if<QuadMesh>(&s.geometry))
        per[o].quads += q->quad_count();
      else
        per[o].curves += std::get<CurveSet>(s.geometry).segment_count();
    }
    r.uniqueTriangles += per[o].triangles;
    r.uniqueQuads += per[o].quads;
    r.uniqueCurveSegments += per[o].curves;
    const uint64_t prims = per[o].triangles + per[o].quads + per[o].curves;
    r.perObjectPrimitiveHistogram[prims == 0 ? -1 : int(std::bit_width(prims)) - 1] += 1;
  }
  r.instanceCount = scene.instances.size();
  for (const auto &inst : scene.instances) {
    const PerObject &p = per.at(inst.objectRef);
    r.instancedTriangles += p.triangles;
    r.instancedQuads += p.quads;
    r.instancedCurveSegments += p.curves;
  }
  return r;
}

std::string format_stats(const StatsReport &s) {
  std::string out;
  auto row = [&](std::string_view label, uint64_t v) { out += fmt::format("  {:<24}{:>16}\n", label, v); };
  out += "scene statistics\n";
  row("unique objects", s.uniqueObjects);
  row("unique shapes", s.uniqueShapes);
  row("unique triangles", s.uniqueTriangles);
  row("unique quads", s.uniqueQuads);
  row("unique curve segments", s.uniqueCurveSegments);
  row("instances", s.instanceCount);
  row("instanced triangles", s.instancedTriangles);
  row("instanced quads", s.instancedQuads);
  row("instanced curve segments", s.instancedCurveSegments);
  out += "  primitives/object histogram\n";
  for (const auto &[bucket, count] : s.perObjectPrimitiveHistogram) {
    if (bucket < 0)
      out += fmt::format("    {:>22}{:>16}\n", "empty", count);
    else
      out += fmt::format("    [{:>9}, {:>9}){:>16}\n", uint64_t(1) << bucket, uint64_t(1) << (bucket + 1), count);
  }
  return out;
}

std::string format_stats_kv(const StatsReport &s) {
  return fmt::format(
      "unique_objects={}\nunique_shapes={}\nunique_triangles={}\nunique_quads={}\nunique_curve_segments={}\n"
      "instance_count={}\ninstanced_triangles={}\ninstanced_quads={}\ninstanced_curve_segments={}\n",
      s.uniqueObjects, s.uniqueShapes, s.uniqueTriangles, s.uniqueQuads, s.uniqueCurveSegments, s.instanceCount,
      s.instancedTriangles, s.instancedQuads, s.instancedCurveSegments);
}

} // namespace elephant::scene

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/ingest/load.hpp"

#include "elephant/core/error.hpp"
#include "elephant/ingest/biff.hpp"
#include "elephant/ingest/pbrt_parser.hpp"
#include "elephant/ingest/quad_merge.hpp"

#include <chrono>

namespace elephant::ingest {

SceneDesc load_scene(const std::filesystem::path &path) {
  SceneDesc scene = path.extension() == ".biff" ? read_biff_file(path) : parse_pbrt_file(path);
  validate(scene);
  return scene;
}

EntityCounts count_entities(const SceneDesc &scene) {
  EntityCounts c;
  c.objects = scene.objects.size();
  c.instances = scene.instances.size();
  c.materials = scene.materials.size();
  c.textures = scene.textures.size();
  c.lights = scene.lights.size();
  for (const auto &o : scene.objects) {
    c.shapes += o.shapes.size();
    for (const auto &s : o.shapes) {
      std::visit(
          [&](const auto &g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, scene::TriangleMesh>) {
              c.vertices += g.positions.size();
              c.primitives += g.triangle_count();
            } else if constexpr (std::is_same_v<G, scene::QuadMesh>) {
              c.vertices += g.positions.size();
              c.primitives += g.quad_count();
            } else {
              c.vertices += g.controlPoints.size();
              c.primitives += g.segment_count();
            }
          },
          s.geometry);
    }
  }
  return c;
}

LoadReport bench_load(const std::filesystem::path &pbrtPath, const std::filesystem::path &biffPath, bool quadMerge) {
  using Clock = std::chrono::steady_clock;
  LoadReport report;

  auto t0 = Clock::now();
  SceneDesc ascii = parse_pbrt_file(pbrtPath);
  if (quadMerge) merge_scene_quads(ascii);
  auto t1 = Clock::now();
  report.asciiSeconds = std::chrono::duration<double>(t1 - t0).count();

  t0 = Clock::now();
  const SceneDesc binary = read_biff_file(biffPath);
  t1 = Clock::now();
  report.binarySeconds = std::chrono::duration<double>(t1 - t0).count();

  report.asciiCounts = count_entities(ascii);
  report.binaryCounts = count_entities(binary);
  if (!(report.asciiCounts == report.binaryCounts))
    throw MismatchedScenes("ASCII and BIFF scenes differ in entity counts");
  report.speedup = report.asciiSeconds / std::max(report.binarySeconds, 1e-9);
  return report;
}

} // namespace elephant::ingest

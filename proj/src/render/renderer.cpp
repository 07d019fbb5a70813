// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/render/renderer.hpp"

#include <chrono>
#include <numeric>
#include <random>

#include <omp.h>

namespace elephant::render {

namespace {

struct TileWorker {
  ThreadProfiler profiler;
  accel::TraversalStats traversal;
  uint64_t rays = 0;
  uint64_t fireflies = 0;
  bool used = false;

  explicit TileWorker(bool profile) : profiler(profile) {}
};

void render_tile(const World &world, const PinholeCamera &cam, FrameBuffer &fb, const RenderConfig &cfg,
                 uint64_t seed, uint32_t frameIndex, uint32_t tileIndex, TileWorker &w) {
  const TileRect r = fb.tile(tileIndex);
  const uint32_t spp = std::max(1u, cfg.samplesPerFrame);
  const uint32_t depth = std::max(1u, cfg.maxPathDepth);
  PathContext ctx{&w.profiler, &w.traversal, 0};
  w.used = true;
  for (uint32_t y = r.y0; y < r.y1; ++y) {
    for (uint32_t x = r.x0; x < r.x1; ++x) {
      Rgb color{0.f}, albedo{0.f}, normal{0.f};
      uint32_t rays = 0;
      for (uint32_t s = 0; s < spp; ++s) {
        Sampler sampler(seed, x, y, sample_index(frameIndex, spp, s));
        const float jx = sampler.next(), jy = sampler.next();
        const Ray ray = cam.generate(float(x) + jx, float(y) + jy);
        switch (cfg.mode) {
        case RenderMode::PrimId:
        case RenderMode::GeomId:
        case RenderMode::InstanceId: {
          std::optional<accel::Hit> hit;
          {
            ScopedCategory scope(&w.profiler, Category::TraversalIntersect);
            hit = world.accel().intersect(ray, &w.traversal);
          }
          ++rays;
          ScopedCategory scope(&w.profiler, Category::SampleShade);
          const Rgb c = debug_shade(world, hit, cfg.mode);
          color += c;
          albedo += c;
          if (hit) normal += hit->ng;
          break;
        }
        case RenderMode::Albedo:
        case RenderMode::Normal: {
          std::optional<accel::Hit> hit;
          {
            ScopedCategory scope(&w.profiler, Category::TraversalIntersect);
            hit = world.accel().intersect(ray, &w.traversal);
          }
          ++rays;
          if (!hit) {
            color += Rgb{kBackgroundGray};
            break;
          }
          const SurfacePoint sp = surface_point(world, ray, *hit, &w.profiler);
          color += cfg.mode == RenderMode::Albedo ? sp.baseColor : sp.ns * 0.5f + Rgb{0.5f};
          albedo += sp.baseColor;
          normal += sp.ns;
          break;
        }
        default: {
          const PathResult p = trace_path(world, sampler, ray, depth, ctx);
          rays += p.rays;
          color += p.radiance;
          albedo += p.albedo;
          normal += p.normal;
        }
        }
      }
      const std::size_t i = fb.index(x, y);
      fb.color[i] += color;
      fb.albedo[i] += albedo;
      fb.normal[i] += normal;
      fb.cost[i] += rays;
      fb.samples[i] += spp;
      w.rays += rays;
    }
  }
  w.fireflies += ctx.fireflies;
}

uint64_t frame_seed(const RenderConfig &cfg) {
  if (cfg.deterministic) return cfg.seed;
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  return rng();
}

RenderStats run(const World &world, const CameraState &camera, FrameBuffer &fb, const RenderConfig &cfg,
                uint32_t frameIndex, std::span<const uint32_t> tiles, bool parallel) {
  const auto start = std::chrono::steady_clock::now();
  const PinholeCamera cam(camera, fb.width(), fb.height());
  const uint64_t seed = frame_seed(cfg);
  const int threads = parallel ? (cfg.threads > 0 ? cfg.threads : omp_get_max_threads()) : 1;
  std::vector<TileWorker> workers;
  workers.reserve(std::size_t(threads));
  for (int t = 0; t < threads; ++t) workers.emplace_back(cfg.profile);

  if (parallel) {
#pragma omp parallel num_threads(threads)
    {
      TileWorker &w = workers[std::size_t(omp_get_thread_num())];
      w.profiler.start();
#pragma omp for schedule(dynamic, 1)
      for (std::size_t k = 0; k < tiles.size(); ++k) render_tile(world, cam, fb, cfg, seed, frameIndex, tiles[k], w);
      w.profiler.stop();
    }
  } else {
    TileWorker &w = workers[0];
    w.profiler.start();
    for (const uint32_t t : tiles) render_tile(world, cam, fb, cfg, seed, frameIndex, t, w);
    w.profiler.stop();
  }

  RenderStats stats;
  uint32_t used = 0;
  for (const TileWorker &w : workers) {
    stats.raysTraced += w.rays;
    stats.fireflies += w.fireflies;
    stats.traversal += w.traversal;
    if (!w.used) continue;
    ++used;
    const auto s = w.profiler.seconds();
    for (std::size_t c = 0; c < kCategoryCount; ++c) stats.categorySeconds[c] += s[c];
  }
  if (used > 0)
    for (double &s : stats.categorySeconds) s /= used;
  for (const uint32_t t : tiles) stats.pixelCount += fb.tile(t).pixel_count();
  stats.samplesPerPixel = std::max(1u, cfg.samplesPerFrame);
  stats.frameMillis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

} // namespace

std::array<double, kCategoryCount> RenderStats::shares() const {
  std::array<double, kCategoryCount> s{};
  const double total = std::accumulate(categorySeconds.begin(), categorySeconds.end(), 0.0);
  if (!(total > 0)) {
    s[std::size_t(Category::Other)] = 1.0;
    return s;
  }
  for (std::size_t c = 0; c < kCategoryCount; ++c) s[c] = categorySeconds[c] / total;
  return s;
}

void RenderStats::merge(const RenderStats &o) {
  for (std::size_t c = 0; c < kCategoryCount; ++c) categorySeconds[c] += o.categorySeconds[c];
  raysTraced += o.raysTraced;
  pixelCount += o.pixelCount;
  samplesPerPixel = std::max(samplesPerPixel, o.samplesPerPixel);
  frameMillis = std::max(frameMillis, o.frameMillis);
  fireflies += o.fireflies;
  traversal += o.traversal;
}

uint64_t sample_index(uint32_t frameIndex, uint32_t samplesPerFrame, uint32_t sample) {
  return uint64_t(frameIndex) * std::max(1u, samplesPerFrame) + sample;
}

RenderStats render_tiles(const World &world, const CameraState &camera, FrameBuffer &fb, const RenderConfig &config,
                         uint32_t frameIndex, std::span<const uint32_t> tiles, bool parallel) {
  return run(world, camera, fb, config, frameIndex, tiles, parallel);
}

RenderStats render_frame(const World &world, const CameraState &camera, FrameBuffer &fb, const RenderConfig &config,
                         uint32_t frameIndex) {
  std::vector<uint32_t> tiles(fb.tile_count());
  std::iota(tiles.begin(), tiles.end(), 0u);
  return run(world, camera, fb, config, frameIndex, tiles, true);
}

RenderStats render_frame_serial(const World &world, const CameraState &camera, FrameBuffer &fb,
                                const RenderConfig &config, uint32_t frameIndex) {
  std::vector<uint32_t> tiles(fb.tile_count());
  std::iota(tiles.begin(), tiles.end(), 0u);
  return run(world, camera, fb, config, frameIndex, tiles, false);
}

ImageRgb resolve(const FrameBuffer &fb, const RenderConfig &config) {
  if (config.mode != RenderMode::CostHeat) return fb.mean_color();
  ImageRgb img{fb.width(), fb.height()};
  // Per sample, a path costs at most one ray per vertex plus one shadow ray per scattering vertex.
  const float maxCost = float(2 * std::max(1u, config.maxPathDepth) + 1);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const float perSample = fb.samples[i] ? float(fb.cost[i]) / float(fb.samples[i]) : 0.f;
    img.pixels[i] = heat_color(perSample / maxCost);
  }
  return img;
}

void copy_tile(const FrameBuffer &src, FrameBuffer &dst, uint32_t tile) {
  const TileRect r = src.tile(tile);
  for (uint32_t y = r.y0; y < r.y1; ++y) {
    for (uint32_t x = r.x0; x < r.x1; ++x) {
      const std::size_t i = src.index(x, y);
      dst.color[i] = src.color[i];
      dst.albedo[i] = src.albedo[i];
      dst.normal[i] = src.normal[i];
      dst.cost[i] = src.cost[i];
      dst.samples[i] = src.samples[i];
    }
  }
}

} // namespace elephant::render

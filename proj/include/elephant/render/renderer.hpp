// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/render/camera.hpp"
#include "elephant/render/framebuffer.hpp"
#include "elephant/render/integrator.hpp"
#include "elephant/render/world.hpp"

#include <array>
#include <span>

namespace elephant::render {

struct RenderConfig {
  uint32_t maxPathDepth = 5;
  uint32_t samplesPerFrame = 1;
  RenderMode mode = RenderMode::PathTrace;
  bool deterministic = false;
  uint64_t seed = 0;
  int threads = 0; // 0 = OpenMP default
  bool profile = true;
};

struct RenderStats {
  // Mean per-thread time in each category over the threads that rendered.
  std::array<double, kCategoryCount> categorySeconds{};
  uint64_t raysTraced = 0;
  uint64_t pixelCount = 0;
  uint32_t samplesPerPixel = 0;
  double frameMillis = 0.0;
  uint64_t fireflies = 0;
  accel::TraversalStats traversal;

  // Fractions summing to 1; all time goes to "other" when nothing was measured.
  std::array<double, kCategoryCount> shares() const;
  double rays_per_pixel() const { return pixelCount ? double(raysTraced) / double(pixelCount) : 0.0; }
  // Combines partial stats of disjoint tile sets rendered concurrently.
  void merge(const RenderStats &other);
};

// Sample s of frame f uses sample index f * samplesPerFrame + s.
uint64_t sample_index(uint32_t frameIndex, uint32_t samplesPerFrame, uint32_t sample);

// Renders the given tiles into fb, in parallel when parallel is set. Every pixel of
// those tiles gains samplesPerFrame samples.
RenderStats render_tiles(const World &world, const CameraState &camera, FrameBuffer &fb, const RenderConfig &config,
                         uint32_t frameIndex, std::span<const uint32_t> tiles, bool parallel = true);

// All tiles, OpenMP over tiles.
RenderStats render_frame(const World &world, const CameraState &camera, FrameBuffer &fb, const RenderConfig &config,
                         uint32_t frameIndex);
// All tiles in index order on the calling thread.
RenderStats render_frame_serial(const World &world, const CameraState &camera, FrameBuffer &fb,
                                const RenderConfig &config, uint32_t frameIndex);

// Image to display for the configured mode: the mean color, or for CostHeat the
// per-sample cost on a heat ramp scaled by the largest possible path cost.
ImageRgb resolve(const FrameBuffer &fb, const RenderConfig &config);

// Copies the tile's pixels of every buffer from src to dst.
void copy_tile(const FrameBuffer &src, FrameBuffer &dst, uint32_t tile);

} // namespace elephant::render

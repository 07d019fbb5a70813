// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/ingest/scene_desc.hpp"
#include "elephant/render/renderer.hpp"
#include "elephant/shade/texture_cache.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace elephant::harness {

struct BenchConfig {
  uint32_t width = 1536, height = 644;
  uint32_t warmupFrames = 64, measuredFrames = 64;
  uint32_t workers = 1; // 1 renders in this process without the distributed framebuffer
  bool denoise = true;
  // Drop texture files from the OS page cache before the first frame.
  bool coldTextureStart = true;
  render::RenderConfig render;       // maxPathDepth defaults to 5
  shade::TextureCacheConfig textureCache; // unlimited bytes, 100 open files
};

struct BenchReport {
  std::string sceneId;
  uint32_t width = 0, height = 0;
  uint32_t warmupFrames = 0, measuredFrames = 0;
  uint32_t workers = 1;
  uint32_t maxPathDepth = 0;
  double meanFrameMillis = 0, medianFrameMillis = 0, minFrameMillis = 0;
  double mraysPerSecond = 0;
  double raysPerPixel = 0;
  std::array<double, render::kCategoryCount> shares{};
  double denoiseMillis = 0; // mean per measured frame, not part of frame time
  double tonemapMillis = 0; // one tonemap and PNG encode of the final image, not part of frame time
  double buildSeconds = 0;

  // Raw counters over the measured frames.
  uint64_t raysTraced = 0;
  uint64_t pixelSamples = 0; // pixels x frames
  double measuredSeconds = 0;
  std::vector<double> frameMillis; // every frame, warm-up first
  shade::TextureCacheCounters textureCounters;

  double warmup_head_mean(std::size_t n = 5) const;
  double measured_mean() const { return meanFrameMillis; }
};

// Loads nothing itself: the scene and the directory its texture paths are relative to.
BenchReport bench(const ingest::SceneDesc &scene, const std::filesystem::path &baseDir, const BenchConfig &config,
                  std::string sceneId);

// Aligned table followed by key=value lines.
std::string format_report(const BenchReport &r);
std::string report_json(const BenchReport &r);

struct ProfileColumn {
  std::string name;
  std::array<double, render::kCategoryCount> shares{};
};
ProfileColumn profile_column(std::string name, const render::RenderStats &stats);

// Rows are the five time categories, one column per scene, percentages with two
// decimals. Throws SpecOutOfRange when a column's shares do not sum to 1 +- 0.005.
std::string report_profile(const std::vector<ProfileColumn> &columns);

// True when the shares sum to 1 within tolerance and none is negative.
bool shares_close(const std::array<double, render::kCategoryCount> &shares, double tolerance = 0.005);

} // namespace elephant::harness

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/harness/bench.hpp"

#include "elephant/core/error.hpp"
#include "elephant/dfb/head.hpp"
#include "elephant/render/denoise.hpp"
#include "elephant/render/output.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numeric>

namespace elephant::harness {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void summarize(BenchReport &r, const std::vector<render::RenderStats> &measured,
               const std::vector<double> &denoiseMillis) {
  std::vector<double> ms;
  render::RenderStats total;
  for (const auto &s : measured) {
    ms.push_back(s.frameMillis);
    for (std::size_t c = 0; c < render::kCategoryCount; ++c) total.categorySeconds[c] += s.categorySeconds[c];
    r.raysTraced += s.raysTraced;
    r.pixelSamples += s.pixelCount;
    r.measuredSeconds += s.frameMillis / 1000.0;
  }
  if (!ms.empty()) {
    r.meanFrameMillis = std::accumulate(ms.begin(), ms.end(), 0.0) / double(ms.size());
    std::vector<double> sorted = ms;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    r.medianFrameMillis = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    r.minFrameMillis = sorted.front();
  }
  r.shares = total.shares();
  r.mraysPerSecond = r.measuredSeconds > 0 ? double(r.raysTraced) / (r.measuredSeconds * 1e6) : 0.0;
  r.raysPerPixel = r.pixelSamples ? double(r.raysTraced) / double(r.pixelSamples) : 0.0;
  if (!denoiseMillis.empty())
    r.denoiseMillis = std::accumulate(denoiseMillis.begin(), denoiseMillis.end(), 0.0) / double(denoiseMillis.size());
}

double time_tonemap(const ImageRgb &img, render::RenderMode mode) {
  const auto t0 = Clock::now();
  const auto rgb = render::display_rgb8(img, mode);
  const auto png = render::encode_png(rgb, img.width, img.height);
  (void)png;
  return millis_since(t0);
}

} // namespace

double BenchReport::warmup_head_mean(std::size_t n) const {
  n = std::min(n, frameMillis.size());
  if (n == 0) return 0.0;
  return std::accumulate(frameMillis.begin(), frameMillis.begin() + std::ptrdiff_t(n), 0.0) / double(n);
}

BenchReport bench(const ingest::SceneDesc &scene, const std::filesystem::path &baseDir, const BenchConfig &config,
                  std::string sceneId) {
  if (config.workers == 0) throw ZeroWorkers();
  BenchReport r;
  r.sceneId = std::move(sceneId);
  r.width = config.width;
  r.height = config.height;
  r.warmupFrames = config.warmupFrames;
  r.measuredFrames = config.measuredFrames;
  r.workers = config.workers;
  r.maxPathDepth = config.render.maxPathDepth;

  if (config.coldTextureStart)
    for (const auto &t : scene.textures) shade::evict_os_file_cache(baseDir / t.path);

  render::WorldOptions worldOptions;
  worldOptions.textureCache = config.textureCache;
  const uint32_t total = config.warmupFrames + config.measuredFrames;
  std::vector<render::RenderStats> measured;
  std::vector<double> denoiseMillis;

  if (config.workers == 1) {
    const auto t0 = Clock::now();
    const render::World world(scene, baseDir, worldOptions);
    r.buildSeconds = millis_since(t0) / 1000.0;
    render::FrameBuffer fb(config.width, config.height);
    for (uint32_t f = 0; f < total; ++f) {
      const render::RenderStats s = render::render_frame(world, world.camera(), fb, config.render, f);
      r.frameMillis.push_back(s.frameMillis);
      if (f < config.warmupFrames) continue;
      measured.push_back(s);
      if (config.denoise && config.render.mode == render::RenderMode::PathTrace) {
        const auto d0 = Clock::now();
        const ImageRgb out = render::denoise(fb.mean_color(), fb.mean_albedo(), fb.mean_normal(), fb.samples[0]);
        (void)out;
        denoiseMillis.push_back(millis_since(d0));
      }
    }
    r.tonemapMillis = time_tonemap(render::resolve(fb, config.render), config.render.mode);
    if (world.textures()) r.textureCounters = world.textures()->counters();
  } else {
    dfb::LocalWorkers pool(config.workers, dfb::WorkerOptions{worldOptions});
    dfb::HeadOptions ho;
    ho.width = config.width;
    ho.height = config.height;
    ho.config = config.render;
    ho.denoise = config.denoise;
    std::vector<double> headDenoise;
    std::mutex m;
    const auto t0 = Clock::now();
    dfb::Head head(pool.take_connections(), dfb::scene_source(scene, baseDir), ho, [&](dfb::DisplayFrame &&frame) {
      std::lock_guard lock(m);
      if (frame.frameIndex >= config.warmupFrames && frame.denoised) headDenoise.push_back(frame.denoiseMillis);
    });
    r.buildSeconds = millis_since(t0) / 1000.0;
    for (uint32_t f = 0; f < total; ++f) {
      const render::RenderStats s = head.step();
      r.frameMillis.push_back(s.frameMillis);
      if (f >= config.warmupFrames) measured.push_back(s);
    }
    head.drain();
    r.tonemapMillis = time_tonemap(render::resolve(head.framebuffer(), config.render), config.render.mode);
    head.shutdown();
    pool.join();
    denoiseMillis = headDenoise;
  }
  summarize(r, measured, denoiseMillis);
  return r;
}

std::string format_report(const BenchReport &r) {
  std::string out;
  out += fmt::format("scene {}  {}x{}  depth {}  workers {}  warmup {}  measured {}\n", r.sceneId, r.width, r.height,
                     r.maxPathDepth, r.workers, r.warmupFrames, r.measuredFrames);
  out += fmt::format("{:<24}{:>12}\n", "frame ms (mean)", fmt::format("{:.2f}", r.meanFrameMillis));
  out += fmt::format("{:<24}{:>12}\n", "frame ms (median)", fmt::format("{:.2f}", r.medianFrameMillis));
  out += fmt::format("{:<24}{:>12}\n", "frame ms (min)", fmt::format("{:.2f}", r.minFrameMillis));
  out += fmt::format("{:<24}{:>12}\n", "Mray/s", fmt::format("{:.2f}", r.mraysPerSecond));
  out += fmt::format("{:<24}{:>12}\n", "rays/pixel", fmt::format("{:.3f}", r.raysPerPixel));
  out += fmt::format("{:<24}{:>12}\n", "denoise ms", fmt::format("{:.2f}", r.denoiseMillis));
  out += fmt::format("{:<24}{:>12}\n", "tonemap+png ms", fmt::format("{:.2f}", r.tonemapMillis));
  for (std::size_t c = 0; c < render::kCategoryCount; ++c)
    out += fmt::format("{:<24}{:>11.2f}%\n", render::category_label(render::Category(c)), 100.0 * r.shares[c]);
  out += fmt::format("scene={}\n", r.sceneId);
  out += fmt::format("resolution={}x{}\n", r.width, r.height);
  out += fmt::format("max_path_depth={}\n", r.maxPathDepth);
  out += fmt::format("workers={}\n", r.workers);
  out += fmt::format("warmup_frames={}\n", r.warmupFrames);
  out += fmt::format("measured_frames={}\n", r.measuredFrames);
  out += fmt::format("frame_ms_mean={:.4f}\n", r.meanFrameMillis);
  out += fmt::format("frame_ms_median={:.4f}\n", r.medianFrameMillis);
  out += fmt::format("frame_ms_min={:.4f}\n", r.minFrameMillis);
  out += fmt::format("mrays_per_second={:.4f}\n", r.mraysPerSecond);
  out += fmt::format("rays_per_pixel={:.6f}\n", r.raysPerPixel);
  out += fmt::format("rays_traced={}\n", r.raysTraced);
  out += fmt::format("pixel_samples={}\n", r.pixelSamples);
  out += fmt::format("measured_seconds={:.6f}\n", r.measuredSeconds);
  out += fmt::format("denoise_ms={:.4f}\n", r.denoiseMillis);
  out += fmt::format("tonemap_ms={:.4f}\n", r.tonemapMillis);
  out += fmt::format("build_seconds={:.4f}\n", r.buildSeconds);
  out += fmt::format("warmup_first5_ms_mean={:.4f}\n", r.warmup_head_mean());
  for (std::size_t c = 0; c < render::kCategoryCount; ++c)
    out += fmt::format("share_{}={:.4f}\n", render::category_name(render::Category(c)), 100.0 * r.shares[c]);
  out += fmt::format("texture_hits={}\ntexture_misses={}\ntexture_evictions={}\ntexture_handle_opens={}\n",
                     r.textureCounters.hits, r.textureCounters.misses, r.textureCounters.evictions,
                     r.textureCounters.handleOpens);
  return out;
}

std::string report_json(const BenchReport &r) {
  nlohmann::json shares = nlohmann::json::object();
  for (std::size_t c = 0; c < render::kCategoryCount; ++c)
    shares[std::string(render::category_name(render::Category(c)))] = 100.0 * r.shares[c];
  nlohmann::json j = {
      {"scene", r.sceneId},
      {"width", r.width},
      {"height", r.height},
      {"maxPathDepth", r.maxPathDepth},
      {"workers", r.workers},
      {"warmupFrames", r.warmupFrames},
      {"measuredFrames", r.measuredFrames},
      {"frameMillis", {{"mean", r.meanFrameMillis}, {"median", r.medianFrameMillis}, {"min", r.minFrameMillis}}},
      {"mraysPerSecond", r.mraysPerSecond},
      {"raysPerPixel", r.raysPerPixel},
      {"sharePercents", shares},
      {"denoiseMillis", r.denoiseMillis},
      {"tonemapMillis", r.tonemapMillis},
      {"buildSeconds", r.buildSeconds},
      {"raysTraced", r.raysTraced},
      {"pixelSamples", r.pixelSamples},
      {"measuredSeconds", r.measuredSeconds},
      {"perFrameMillis", r.frameMillis},
      {"texture",
       {{"hits", r.textureCounters.hits},
        {"misses", r.textureCounters.misses},
        {"evictions", r.textureCounters.evictions},
        {"handleOpens", r.textureCounters.handleOpens},
        {"peakResidentBytes", r.textureCounters.peakResidentBytes}}}};
  return j.dump(2);
}

ProfileColumn profile_column(std::string name, const render::RenderStats &stats) {
  return ProfileColumn{std::move(name), stats.shares()};
}

bool shares_close(const std::array<double, render::kCategoryCount> &shares, double tolerance) {
  double sum = 0;
  for (double s : shares) {
    if (!(s >= 0.0)) return false;
    sum += s;
  }
  return std::abs(sum - 1.0) <= tolerance;
}

std::string report_profile(const std::vector<ProfileColumn> &columns) {
  for (const auto &c : columns)
    if (!shares_close(c.shares)) throw SpecOutOfRange("shares of '" + c.name + "' do not sum to 100%");
  std::size_t labelWidth = 0;
  for (std::size_t c = 0; c < render::kCategoryCount; ++c)
    labelWidth = std::max(labelWidth, render::category_label(render::Category(c)).size());
  std::vector<std::size_t> widths;
  for (const auto &c : columns) widths.push_back(std::max<std::size_t>(c.name.size(), 7));

  std::string out = fmt::format("{:<{}}", "", labelWidth);
  for (std::size_t i = 0; i < columns.size(); ++i) out += fmt::format("  {:>{}}", columns[i].name, widths[i]);
  out += '\n';
  for (std::size_t c = 0; c < render::kCategoryCount; ++c) {
    out += fmt::format("{:<{}}", render::category_label(render::Category(c)), labelWidth);
    for (std::size_t i = 0; i < columns.size(); ++i)
      out += fmt::format("  {:>{}}", fmt::format("{:.2f}", 100.0 * columns[i].shares[c]), widths[i]);
    out += '\n';
  }
  return out;
}

} // namespace elephant::harness

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/render/denoise.hpp"

#include "elephant/core/error.hpp"
#include "elephant/render/renderer.hpp"
#include "elephant/scene/generator.hpp"

#include <doctest.h>

#include <random>

using namespace elephant;
using namespace elephant::render;

namespace {

double mse(const ImageRgb &a, const ImageRgb &b) {
  double s = 0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const Rgb d = a.pixels[i] - b.pixels[i];
    s += dot(d, d);
  }
  return s / (3.0 * double(a.pixels.size()));
}

} // namespace

TEST_CASE("constant images are a fixed point") {
  const ImageRgb c{40, 30, Rgb{0.3f, 0.6f, 0.9f}}, a{40, 30, Rgb{0.5f}}, n{40, 30, Rgb{0, 0, 1}};
  const ImageRgb out = denoise(c, a, n, 1);
  CHECK(out.pixels == c.pixels);
}

TEST_CASE("flat neighborhoods are untouched next to structure") {
  ImageRgb c{80, 40, Rgb{0.5f}}, a{80, 40, Rgb{0.7f}}, n{80, 40, Rgb{0, 0, 1}};
  std::mt19937 rng(1);
  std::normal_distribution<float> u(1.f, 0.3f);
  for (uint32_t y = 0; y < 40; ++y)
    for (uint32_t x = 40; x < 80; ++x) c.at(x, y) = Rgb{std::max(0.f, u(rng))};
  const ImageRgb out = denoise(c, a, n, 1);
  for (uint32_t y = 0; y < 40; ++y)
    for (uint32_t x = 0; x < 36; ++x) CHECK(std::abs(out.at(x, y).x - 0.5f) <= 1e-6f);
  // The noisy half is smoothed.
  double before = 0, after = 0;
  for (uint32_t y = 0; y < 40; ++y)
    for (uint32_t x = 50; x < 80; ++x) {
      before += std::abs(c.at(x, y).x - 1.f);
      after += std::abs(out.at(x, y).x - 1.f);
    }
  CHECK(after < 0.5 * before);
}

TEST_CASE("size mismatch is rejected") {
  const ImageRgb c{4, 4}, a{4, 3}, n{4, 4};
  CHECK_THROWS_AS(denoise(c, a, n, 1), DimensionMismatch);
  CHECK_THROWS_AS(denoise(c, c, a, 1), DimensionMismatch);
}

TEST_CASE("albedo edges survive filtering") {
  // Vertical albedo step at x = 32 under noisy shading; the color gradient maximum stays there.
  const uint32_t w = 64, h = 48;
  ImageRgb c{w, h}, a{w, h}, n{w, h, Rgb{0, 0, 1}};
  std::mt19937 rng(3);
  std::normal_distribution<float> noise(0.f, 0.15f);
  for (uint32_t y = 0; y < h; ++y)
    for (uint32_t x = 0; x < w; ++x) {
      const float alb = x < 32 ? 0.2f : 0.8f;
      a.at(x, y) = Rgb{alb};
      c.at(x, y) = Rgb{std::max(0.f, alb + noise(rng))};
    }
  const ImageRgb out = denoise(c, a, n, 1);
  int hits = 0;
  for (uint32_t y = 0; y < h; ++y) {
    float best = -1.f;
    uint32_t at = 0;
    for (uint32_t x = 1; x < w; ++x) {
      const float g = std::abs(out.at(x, y).x - out.at(x - 1, y).x);
      if (g > best) {
        best = g;
        at = x;
      }
    }
    if (at >= 31 && at <= 33) ++hits;
  }
  CHECK(hits == int(h));
  for (const Rgb &p : out.pixels) CHECK(p.x >= 0.f);
}

TEST_CASE("denoising a one-sample furnace render lowers the error") {
  World world(scene::furnace_sphere_scene());
  RenderConfig cfg;
  cfg.deterministic = true;
  FrameBuffer noisy(48, 48), ref(48, 48);
  render_frame(world, world.camera(), noisy, cfg, 0);
  cfg.samplesPerFrame = 512;
  cfg.seed = 99;
  render_frame(world, world.camera(), ref, cfg, 0);
  const ImageRgb den = denoise(noisy.mean_color(), noisy.mean_albedo(), noisy.mean_normal(), 1);
  const double before = mse(noisy.mean_color(), ref.mean_color());
  const double after = mse(den, ref.mean_color());
  MESSAGE("mse noisy " << before << " denoised " << after);
  CHECK(after < before);
}

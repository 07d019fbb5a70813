// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/render/denoise.hpp"

#include "elephant/core/error.hpp"

#include <cmath>
#include <string>

namespace elephant::render {

namespace {

float dist2(const Rgb &a, const Rgb &b) {
  const Rgb d = a - b;
  return dot(d, d);
}

// Flags pixels whose 9x9 window is constant in all three buffers.
std::vector<uint8_t> flat_mask(const ImageRgb &c, const ImageRgb &a, const ImageRgb &n) {
  const int w = int(c.width), h = int(c.height);
  std::vector<uint8_t> rowFlat(c.pixels.size(), 0), flat(c.pixels.size(), 0);
  auto same = [&](std::size_t i, std::size_t j) {
    return c.pixels[i] == c.pixels[j] && a.pixels[i] == a.pixels[j] && n.pixels[i] == n.pixels[j];
  };
  // Horizontal pass: pixel equals every neighbor within 4 columns (clipped at the border).
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = std::size_t(y) * w + x;
      bool ok = true;
      for (int dx = -4; dx <= 4 && ok; ++dx) {
        const int xx = x + dx;
        if (xx >= 0 && xx < w) ok = same(i, std::size_t(y) * w + xx);
      }
      rowFlat[i] = ok;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = std::size_t(y) * w + x;
      bool ok = rowFlat[i];
      for (int dy = -4; dy <= 4 && ok; ++dy) {
        const int yy = y + dy;
        if (yy >= 0 && yy < h) ok = rowFlat[std::size_t(yy) * w + x] && same(i, std::size_t(yy) * w + x);
      }
      flat[i] = ok;
    }
  }
  return flat;
}

} // namespace

ImageRgb denoise(const ImageRgb &color, const ImageRgb &albedo, const ImageRgb &normal, uint32_t sampleCount,
                 const DenoiseParams &params) {
  if (albedo.width != color.width || albedo.height != color.height || normal.width != color.width ||
      normal.height != color.height)
    throw DimensionMismatch("denoise inputs differ in size: color " + std::to_string(color.width) + "x" +
                            std::to_string(color.height) + ", albedo " + std::to_string(albedo.width) + "x" +
                            std::to_string(albedo.height) + ", normal " + std::to_string(normal.width) + "x" +
                            std::to_string(normal.height));
  const int w = int(color.width), h = int(color.height);
  const std::vector<uint8_t> flat = flat_mask(color, albedo, normal);
  static constexpr float kernel[5] = {1.f / 16, 1.f / 4, 3.f / 8, 1.f / 4, 1.f / 16};
  const float invA = 1.f / (params.sigmaAlbedo * params.sigmaAlbedo);
  const float invN = 1.f / (params.sigmaNormal * params.sigmaNormal);
  float sigmaC = params.sigmaColor / std::sqrt(float(std::max(1u, sampleCount)));

  ImageRgb cur = color, next{color.width, color.height};
  for (int it = 0; it < params.iterations; ++it) {
    const int step = 1 << it;
    const float invC = 1.f / (sigmaC * sigmaC);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = std::size_t(y) * w + x;
        if (flat[i]) {
          next.pixels[i] = cur.pixels[i];
          continue;
        }
        const Rgb c0 = cur.pixels[i], a0 = albedo.pixels[i], n0 = normal.pixels[i];
        Rgb sum{0.f};
        float wsum = 0.f;
        for (int ky = -2; ky <= 2; ++ky) {
          const int yy = y + ky * step;
          if (yy < 0 || yy >= h) continue;
          for (int kx = -2; kx <= 2; ++kx) {
            const int xx = x + kx * step;
            if (xx < 0 || xx >= w) continue;
            const std::size_t j = std::size_t(yy) * w + xx;
            const float wgt = kernel[kx + 2] * kernel[ky + 2] *
                              std::exp(-dist2(cur.pixels[j], c0) * invC - dist2(albedo.pixels[j], a0) * invA -
                                       dist2(normal.pixels[j], n0) * invN);
            sum += cur.pixels[j] * wgt;
            wsum += wgt;
          }
        }
        next.pixels[i] = wsum > 0.f ? sum / wsum : c0;
      }
    }
    std::swap(cur, next);
    sigmaC *= 0.5f;
  }
  for (Rgb &p : cur.pixels) p = max(p, Rgb{0.f});
  return cur;
}

} // namespace elephant::render

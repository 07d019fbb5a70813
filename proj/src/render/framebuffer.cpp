// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/render/framebuffer.hpp"

#include <algorithm>
#include <cstring>

namespace elephant::render {

FrameBuffer::FrameBuffer(uint32_t width, uint32_t height) : width_(width), height_(height) { reset(); }

TileRect FrameBuffer::tile(uint32_t index) const {
  const uint32_t tx = index % tiles_x(), ty = index / tiles_x();
  const uint32_t x0 = tx * kTileSize, y0 = ty * kTileSize;
  return {x0, y0, std::min(x0 + kTileSize, width_), std::min(y0 + kTileSize, height_)};
}

void FrameBuffer::reset() {
  const std::size_t n = pixel_count();
  color.assign(n, Rgb{0.f});
  albedo.assign(n, Rgb{0.f});
  normal.assign(n, Rgb{0.f});
  cost.assign(n, 0);
  samples.assign(n, 0);
}

ImageRgb FrameBuffer::mean_of(const std::vector<Rgb> &sum) const {
  ImageRgb img{width_, height_};
  for (std::size_t i = 0; i < sum.size(); ++i)
    img.pixels[i] = samples[i] > 0 ? sum[i] / float(samples[i]) : Rgb{0.f};
  return img;
}

ImageRgb FrameBuffer::mean_color() const { return mean_of(color); }
ImageRgb FrameBuffer::mean_albedo() const { return mean_of(albedo); }
ImageRgb FrameBuffer::mean_normal() const { return mean_of(normal); }

bool FrameBuffer::identical(const FrameBuffer &o) const {
  auto same = [](const auto &a, const auto &b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(a[0])) == 0;
  };
  return width_ == o.width_ && height_ == o.height_ && same(color, o.color) && same(albedo, o.albedo) &&
         same(normal, o.normal) && same(cost, o.cost) && same(samples, o.samples);
}

} // namespace elephant::render

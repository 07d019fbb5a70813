// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/image.hpp"
#include "elephant/core/math.hpp"

#include <cstdint>
#include <vector>

namespace elephant::render {

inline constexpr uint32_t kTileSize = 64;

struct TileRect {
  uint32_t x0, y0, x1, y1; // half-open
  uint32_t width() const { return x1 - x0; }
  uint32_t height() const { return y1 - y0; }
  uint32_t pixel_count() const { return width() * height(); }
};

// Progressive accumulation buffers. Color, albedo and normal hold sums over
// samples; cost holds the cumulative number of rays traced per pixel.
class FrameBuffer {
public:
  FrameBuffer() = default;
  FrameBuffer(uint32_t width, uint32_t height);

  uint32_t width() const { return width_; }
  uint32_t height() const { return height_; }
  std::size_t pixel_count() const { return std::size_t(width_) * height_; }
  uint32_t tiles_x() const { return (width_ + kTileSize - 1) / kTileSize; }
  uint32_t tiles_y() const { return (height_ + kTileSize - 1) / kTileSize; }
  uint32_t tile_count() const { return tiles_x() * tiles_y(); }
  TileRect tile(uint32_t index) const;
  std::size_t index(uint32_t x, uint32_t y) const { return std::size_t(y) * width_ + x; }

  void reset();

  ImageRgb mean_color() const;
  ImageRgb mean_albedo() const;
  ImageRgb mean_normal() const;
  // Bitwise comparison of every buffer.
  bool identical(const FrameBuffer &o) const;

  std::vector<Rgb> color, albedo, normal;
  std::vector<uint32_t> cost;
  std::vector<uint32_t> samples;

private:
  ImageRgb mean_of(const std::vector<Rgb> &sum) const;

  uint32_t width_ = 0, height_ = 0;
};

} // namespace elephant::render

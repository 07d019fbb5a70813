// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/math.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace elephant {

// Row-major RGB float image, row 0 at the top.
struct ImageRgb {
  uint32_t width = 0;
  uint32_t height = 0;
  std::vector<Rgb> pixels;

  ImageRgb() = default;
  ImageRgb(uint32_t w, uint32_t h, Rgb fill = Rgb{0.f}) : width(w), height(h), pixels(std::size_t(w) * h, fill) {}

  Rgb &at(uint32_t x, uint32_t y) { return pixels[std::size_t(y) * width + x]; }
  const Rgb &at(uint32_t x, uint32_t y) const { return pixels[std::size_t(y) * width + x]; }
};

// Portable float map. "PF" (RGB) and "Pf" (gray) are read; RGB is written little-endian.
// Throws Error on malformed files.
ImageRgb read_pfm(const std::filesystem::path &path);
void write_pfm(const ImageRgb &image, const std::filesystem::path &path);

} // namespace elephant

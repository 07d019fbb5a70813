// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/math.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace elephant::testing {

// Uncached reader: opens the file, seeks to the face and filters, on every call.
inline Rgb reference_face_lookup(const std::filesystem::path &path, uint32_t face, float u, float v) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("open " + path.string());
  char magic[4];
  uint32_t version = 0, faces = 0;
  uint8_t channels = 0, encoding = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char *>(&version), 4);
  in.read(reinterpret_cast<char *>(&faces), 4);
  in.read(reinterpret_cast<char *>(&channels), 1);
  in.read(reinterpret_cast<char *>(&encoding), 1);
  if (std::memcmp(magic, "FTEX", 4) != 0 || face >= faces) throw std::runtime_error("bad texture");
  in.seekg(14 + std::streamoff(face) * 12);
  uint16_t ru = 0, rv = 0;
  uint64_t offset = 0;
  in.read(reinterpret_cast<char *>(&ru), 2);
  in.read(reinterpret_cast<char *>(&rv), 2);
  in.read(reinterpret_cast<char *>(&offset), 8);
  const std::size_t bpc = encoding == 0 ? 1 : 4;
  std::vector<unsigned char> data(std::size_t(ru) * rv * channels * bpc);
  in.seekg(std::streamoff(offset));
  in.read(reinterpret_cast<char *>(data.data()), std::streamsize(data.size()));
  if (!in) throw std::runtime_error("short read");

  auto channel = [&](int x, int y, int c) -> float {
    const std::size_t idx = (std::size_t(y) * ru + x) * channels + (channels == 1 ? 0 : c);
    if (encoding == 0) {
      const double s = data[idx] / 255.0;
      return float(s <= 0.04045 ? s / 12.92 : std::pow((s + 0.055) / 1.055, 2.4));
    }
    float f;
    std::memcpy(&f, &data[idx * 4], 4);
    return f;
  };
  const float fx = std::clamp(u, 0.f, 1.f) * float(ru) - 0.5f;
  const float fy = std::clamp(v, 0.f, 1.f) * float(rv) - 0.5f;
  const float bx = std::floor(fx), by = std::floor(fy);
  const float tx = fx - bx, ty = fy - by;
  const int x0 = std::clamp(int(bx), 0, ru - 1), x1 = std::clamp(int(bx) + 1, 0, ru - 1);
  const int y0 = std::clamp(int(by), 0, rv - 1), y1 = std::clamp(int(by) + 1, 0, rv - 1);
  Rgb out;
  for (int c = 0; c < 3; ++c) {
    const float top = channel(x0, y0, c) * (1.f - tx) + channel(x1, y0, c) * tx;
    const float bottom = channel(x0, y1, c) * (1.f - tx) + channel(x1, y1, c) * tx;
    out[c] = top * (1.f - ty) + bottom * ty;
  }
  return out;
}

} // namespace elephant::testing

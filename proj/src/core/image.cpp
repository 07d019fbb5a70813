// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/core/image.hpp"

#include "elephant/core/error.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace elephant {

ImageRgb read_pfm(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string magic;
  int w = 0, h = 0;
  float scale = 0.f;
  in >> magic >> w >> h >> scale;
  if (!in || (magic != "PF" && magic != "Pf") || w <= 0 || h <= 0 || scale == 0.f)
    throw Error("malformed PFM header in " + path.string());
  in.get();
  const int channels = magic == "PF" ? 3 : 1;
  const bool fileLittle = scale < 0.f;
  const bool hostLittle = std::endian::native == std::endian::little;
  std::vector<float> raw(std::size_t(w) * h * channels);
  if (!in.read(reinterpret_cast<char *>(raw.data()), std::streamsize(raw.size() * sizeof(float))))
    throw Error("truncated PFM data in " + path.string());
  if (fileLittle != hostLittle) {
    for (float &f : raw) {
      uint32_t bits;
      std::memcpy(&bits, &f, 4);
      bits = __builtin_bswap32(bits);
      std::memcpy(&f, &bits, 4);
    }
  }
  ImageRgb img{uint32_t(w), uint32_t(h)};
  // PFM rows run bottom to top.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float *p = &raw[(std::size_t(h - 1 - y) * w + x) * channels];
      img.at(x, y) = channels == 3 ? Rgb{p[0], p[1], p[2]} : Rgb{p[0]};
    }
  }
  return img;
}

void write_pfm(const ImageRgb &image, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "PF\n" << image.width << ' ' << image.height << "\n-1.0\n";
  std::vector<float> row(std::size_t(image.width) * 3);
  for (uint32_t y = image.height; y-- > 0;) {
    for (uint32_t x = 0; x < image.width; ++x) {
      const Rgb &c = image.at(x, y);
      row[x * 3] = c.x;
      row[x * 3 + 1] = c.y;
      row[x * 3 + 2] = c.z;
    }
    if constexpr (std::endian::native == std::endian::big) {
      for (float &f : row) {
        uint32_t bits;
        std::memcpy(&bits, &f, 4);
        bits = __builtin_bswap32(bits);
        std::memcpy(&f, &bits, 4);
      }
    }
    out.write(reinterpret_cast<const char *>(row.data()), std::streamsize(row.size() * sizeof(float)));
  }
  if (!out) throw Error("failed writing " + path.string());
}

} // namespace elephant

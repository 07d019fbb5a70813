// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/render/output.hpp"

#include "elephant/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include <png.h>

namespace elephant::render {

uint8_t tonemap_channel(float linear, float exposure) {
  float x = linear * exposure;
  if (!(x > 0.f)) return 0;
  x = x / (1.f + x);
  const float s = x <= 0.0031308f ? 12.92f * x : 1.055f * std::pow(x, 1.f / 2.4f) - 0.055f;
  return uint8_t(std::lround(std::clamp(s, 0.f, 1.f) * 255.f));
}

std::vector<uint8_t> tonemap_for_display(const ImageRgb &image, float exposure) {
  std::vector<uint8_t> out(image.pixels.size() * 3);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    out[i * 3] = tonemap_channel(image.pixels[i].x, exposure);
    out[i * 3 + 1] = tonemap_channel(image.pixels[i].y, exposure);
    out[i * 3 + 2] = tonemap_channel(image.pixels[i].z, exposure);
  }
  return out;
}

std::vector<uint8_t> quantize_for_display(const ImageRgb &image) {
  std::vector<uint8_t> out(image.pixels.size() * 3);
  auto q = [](float v) { return uint8_t(std::lround(std::clamp(std::isfinite(v) ? v : 0.f, 0.f, 1.f) * 255.f)); };
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    out[i * 3] = q(image.pixels[i].x);
    out[i * 3 + 1] = q(image.pixels[i].y);
    out[i * 3 + 2] = q(image.pixels[i].z);
  }
  return out;
}

std::vector<uint8_t> display_rgb8(const ImageRgb &image, RenderMode mode, float exposure) {
  return mode == RenderMode::PathTrace ? tonemap_for_display(image, exposure) : quantize_for_display(image);
}

namespace {

void append_bytes(png_structp png, png_bytep data, png_size_t length) {
  auto *out = static_cast<std::vector<uint8_t> *>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void no_flush(png_structp) {}

[[noreturn]] void png_fail(png_structp, png_const_charp msg) { throw Error(std::string("png: ") + msg); }
void png_warn(png_structp, png_const_charp) {}

struct ReadCursor {
  const std::vector<uint8_t> *data;
  std::size_t pos;
};

void read_bytes(png_structp png, png_bytep out, png_size_t length) {
  auto *c = static_cast<ReadCursor *>(png_get_io_ptr(png));
  if (c->pos + length > c->data->size()) png_error(png, "truncated");
  std::memcpy(out, c->data->data() + c->pos, length);
  c->pos += length;
}

} // namespace

std::vector<uint8_t> encode_png(const std::vector<uint8_t> &rgb, uint32_t width, uint32_t height) {
  if (rgb.size() != std::size_t(width) * height * 3) throw DimensionMismatch("png: pixel buffer size mismatch");
  std::vector<uint8_t> out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
  png_infop info = png_create_info_struct(png);
  try {
    png_set_write_fn(png, &out, append_bytes, no_flush);
    png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (uint32_t y = 0; y < height; ++y)
      png_write_row(png, const_cast<png_bytep>(rgb.data() + std::size_t(y) * width * 3));
    png_write_end(png, nullptr);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
  return out;
}

void write_png(const std::filesystem::path &path, const std::vector<uint8_t> &rgb, uint32_t width, uint32_t height) {
  const std::vector<uint8_t> bytes = encode_png(rgb, width, height);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f.write(reinterpret_cast<const char *>(bytes.data()), std::streamsize(bytes.size()));
}

std::vector<uint8_t> decode_png(const std::vector<uint8_t> &data, uint32_t &width, uint32_t &height) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
  png_infop info = png_create_info_struct(png);
  std::vector<uint8_t> out;
  try {
    ReadCursor cursor{&data, 0};
    png_set_read_fn(png, &cursor, read_bytes);
    png_read_info(png, info);
    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    if (png_get_bit_depth(png, info) != 8 || png_get_color_type(png, info) != PNG_COLOR_TYPE_RGB)
      png_error(png, "expected 8-bit RGB");
    out.resize(std::size_t(width) * height * 3);
    for (uint32_t y = 0; y < height; ++y) png_read_row(png, out.data() + std::size_t(y) * width * 3, nullptr);
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

} // namespace elephant::render

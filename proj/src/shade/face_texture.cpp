// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/shade/face_texture.hpp"

#include "elephant/core/error.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace elephant::shade {

namespace {

template <typename T>
T read_pod(std::istream &in, const std::filesystem::path &path) {
  T v;
  if (!in.read(reinterpret_cast<char *>(&v), sizeof(T))) throw TextureIoError(path.string(), "truncated header");
  return v;
}

template <typename T>
void write_pod(std::ostream &out, T v) {
  out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

bool valid_resolution(uint16_t r) { return r >= 1 && r <= kMaxFaceResolution && std::has_single_bit(r); }

} // namespace

FaceTextureHeader read_face_texture_header(std::istream &in, const std::filesystem::path &path) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "FTEX", 4) != 0) throw TextureIoError(path.string(), "bad magic");
  const auto version = read_pod<uint32_t>(in, path);
  if (version != kFaceTextureVersion) throw TextureIoError(path.string(), "unsupported version");
  const auto faceCount = read_pod<uint32_t>(in, path);
  FaceTextureHeader h;
  h.channels = read_pod<uint8_t>(in, path);
  const auto enc = read_pod<uint8_t>(in, path);
  if (h.channels != 1 && h.channels != 3) throw TextureIoError(path.string(), "channels must be 1 or 3");
  if (enc > 1) throw TextureIoError(path.string(), "unknown texel encoding");
  h.encoding = TexelEncoding(enc);
  h.faces.resize(faceCount);
  for (auto &f : h.faces) {
    f.resU = read_pod<uint16_t>(in, path);
    f.resV = read_pod<uint16_t>(in, path);
    f.dataOffset = read_pod<uint64_t>(in, path);
    if (!valid_resolution(f.resU) || !valid_resolution(f.resV))
      throw TextureIoError(path.string(), "face resolution must be a power of two <= 256");
  }
  return h;
}

void write_face_texture(const FaceTextureData &tex, std::ostream &out) {
  out.write("FTEX", 4);
  write_pod<uint32_t>(out, kFaceTextureVersion);
  write_pod<uint32_t>(out, uint32_t(tex.faces.size()));
  write_pod<uint8_t>(out, tex.channels);
  write_pod<uint8_t>(out, uint8_t(tex.encoding));
  uint64_t offset = kFaceTextureHeaderSize + kFaceTextureEntrySize * tex.faces.size();
  const std::size_t bpc = bytes_per_channel(tex.encoding);
  for (const auto &f : tex.faces) {
    if (!valid_resolution(f.resU) || !valid_resolution(f.resV))
      throw TextureIoError("<memory>", "face resolution must be a power of two <= 256");
    if (f.texels.size() != std::size_t(f.resU) * f.resV * tex.channels * bpc)
      throw TextureIoError("<memory>", "face data length mismatch");
    write_pod(out, f.resU);
    write_pod(out, f.resV);
    write_pod(out, offset);
    offset += f.texels.size();
  }
  for (const auto &f : tex.faces) out.write(reinterpret_cast<const char *>(f.texels.data()), std::streamsize(f.texels.size()));
}

void write_face_texture_file(const FaceTextureData &tex, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TextureIoError(path.string(), "cannot open for writing");
  write_face_texture(tex, out);
  if (!out) throw TextureIoError(path.string(), "write failed");
}

} // namespace elephant::shade

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace elephant::shade {

// Per-face texture file, little-endian:
//   "FTEX" | u32 version | u32 faceCount | u8 channels | u8 encoding
//   | faceCount x {u16 resU, u16 resV, u64 dataOffset} | texel data
// Texel data per face is row-major with v as the slow axis.
inline constexpr uint32_t kFaceTextureVersion = 1;
inline constexpr std::size_t kFaceTextureHeaderSize = 14;
inline constexpr std::size_t kFaceTextureEntrySize = 12;
inline constexpr uint16_t kMaxFaceResolution = 256;

enum class TexelEncoding : uint8_t { Srgb8 = 0, Float32 = 1 };

inline std::size_t bytes_per_channel(TexelEncoding e) { return e == TexelEncoding::Srgb8 ? 1 : 4; }

struct FaceLayout {
  uint16_t resU = 1;
  uint16_t resV = 1;
  uint64_t dataOffset = 0;
};

struct FaceTextureHeader {
  uint8_t channels = 3;
  TexelEncoding encoding = TexelEncoding::Srgb8;
  std::vector<FaceLayout> faces;

  std::size_t face_bytes(uint32_t face) const {
    return std::size_t(faces[face].resU) * faces[face].resV * channels * bytes_per_channel(encoding);
  }
};

// In-memory texture used when authoring files.
struct FaceTextureData {
  uint8_t channels = 3;
  TexelEncoding encoding = TexelEncoding::Srgb8;
  struct Face {
    uint16_t resU = 1;
    uint16_t resV = 1;
    std::vector<std::byte> texels;
  };
  std::vector<Face> faces;
};

// Throws TextureIoError on malformed input (bad magic, resolution not a power
// of two or above 256, channels other than 1 or 3, data length mismatch).
FaceTextureHeader read_face_texture_header(std::istream &in, const std::filesystem::path &pathForErrors);
void write_face_texture(const FaceTextureData &tex, std::ostream &out);
void write_face_texture_file(const FaceTextureData &tex, const std::filesystem::path &path);

} // namespace elephant::shade

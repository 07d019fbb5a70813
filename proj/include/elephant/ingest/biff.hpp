// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/ingest/scene_desc.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace elephant::ingest {

// BIFF: little-endian binary scene image.
//
//   "BIFF" | u32 version | u32 sectionCount | sectionCount x {u32 tag, u64 offset, u64 length}
//
// followed by the section payloads (offsets are absolute). Sections holding no
// data are omitted, so an empty scene is exactly the 12-byte header. Geometry
// arrays are raw f32/u32 runs behind a u64 scalar-count prefix.
inline constexpr uint32_t kBiffVersion = 1;
inline constexpr std::size_t kBiffHeaderSize = 12;
inline constexpr std::size_t kBiffSectionEntrySize = 20;

enum class BiffSection : uint32_t {
  Strings = 1,
  Materials = 2,
  Textures = 3,
  Lights = 4,
  Camera = 5,
  Objects = 6,
  Instances = 7,
};

std::vector<std::byte> encode_biff(const SceneDesc &scene);
SceneDesc decode_biff(std::span<const std::byte> bytes);

// Returns the number of bytes written.
std::size_t write_biff(const SceneDesc &scene, std::ostream &sink);
SceneDesc read_biff(std::istream &source);

void write_biff_file(const SceneDesc &scene, const std::filesystem::path &path);
SceneDesc read_biff_file(const std::filesystem::path &path);

} // namespace elephant::ingest

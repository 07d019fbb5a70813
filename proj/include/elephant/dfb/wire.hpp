// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/render/renderer.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace elephant::dfb {

enum class MessageTag : uint16_t {
  Hello = 1,
  SetScene = 2,
  SetConfig = 3,
  RenderFrame = 4,
  TileResult = 5,
  FrameComplete = 6,
  CameraUpdate = 7,
  Shutdown = 8,
};

struct Hello {
  uint32_t workerId = 0;
  friend bool operator==(const Hello &, const Hello &) = default;
};

// Either the BIFF bytes inline or a path the worker can read. The hash is the
// FNV-1a of the BIFF bytes. baseDir resolves texture and environment files.
struct SetScene {
  std::vector<std::byte> biff;
  std::string path;
  std::string baseDir;
  uint64_t contentHash = 0;
  friend bool operator==(const SetScene &, const SetScene &) = default;
};

struct SetConfig {
  render::RenderConfig config;
  uint32_t width = 0, height = 0;
};

// rank and workerCount select the worker's share of tiles under round-robin ownership.
struct RenderFrame {
  uint32_t frameIndex = 0;
  render::CameraState camera;
  uint32_t rank = 0;
  uint32_t workerCount = 1;
};

// Per-frame contribution of one tile: sums over the frame's samples, and the
// ray count. sampleCount is the worker's accumulated samples per pixel.
struct TileResult {
  uint32_t frameIndex = 0;
  uint32_t tileIndex = 0;
  uint32_t width = 0, height = 0;
  uint32_t sampleCount = 0;
  std::vector<Rgb> color, albedo, normal;
  std::vector<uint32_t> cost;
  friend bool operator==(const TileResult &, const TileResult &) = default;
};

struct FrameComplete {
  uint32_t frameIndex = 0;
  render::RenderStats stats;
};

struct CameraUpdate {
  render::CameraState camera;
};

struct Shutdown {};

using Message = std::variant<Hello, SetScene, SetConfig, RenderFrame, TileResult, FrameComplete, CameraUpdate, Shutdown>;

MessageTag tag_of(const Message &m);
const char *tag_name(MessageTag tag);

// Frame layout: u32 length of what follows, u16 tag, payload; little-endian.
std::vector<std::byte> encode_message(const Message &m);
// Decodes one complete frame (length prefix included). Throws ProtocolError.
Message decode_message(std::span<const std::byte> frame);

// Size of the TileResult payload excluding its fixed header.
constexpr std::size_t tile_payload_bytes(uint32_t w, uint32_t h) { return std::size_t(w) * h * (3 + 3 + 3 + 1) * 4; }
inline constexpr std::size_t kTileResultHeaderBytes = 5 * 4;

// Extracts a tile of fb as a TileResult.
TileResult make_tile_result(const render::FrameBuffer &fb, uint32_t frameIndex, uint32_t tile, uint32_t sampleCount);
// Adds the tile's sums into fb; each pixel gains samplesPerFrame samples.
void accumulate_tile(render::FrameBuffer &fb, const TileResult &r, uint32_t samplesPerFrame);

} // namespace elephant::dfb

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/dfb/head.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace elephant::dfb {

enum class FrameFormat : uint16_t { RawSrgb8 = 0, Png = 1 };

// Binary frame: u32 frameIndex, u32 frameInSequence, u16 mode, u16 format,
// u32 width, u32 height, then the payload; little-endian.
struct FrameHeader {
  uint32_t frameIndex = 0;
  uint32_t frameInSequence = 0;
  uint16_t mode = 0;
  uint16_t format = 0;
  uint32_t width = 0, height = 0;
  friend bool operator==(const FrameHeader &, const FrameHeader &) = default;
};
inline constexpr std::size_t kFrameHeaderBytes = 20;

std::vector<uint8_t> encode_frame_message(const FrameHeader &h, std::span<const uint8_t> payload);
// Throws ProtocolError when the message is shorter than the header.
FrameHeader decode_frame_header(std::span<const uint8_t> message);
// Tonemaps the frame and packs it in the requested format.
std::vector<uint8_t> make_frame_message(const DisplayFrame &frame, FrameFormat format, float exposure = 1.f);

// Control messages arrive as JSON text. Absent fields keep their current value.
struct CameraControl {
  std::optional<Vec3f> position, target, up;
  std::optional<float> fov;
};
struct ConfigControl {
  std::optional<render::RenderMode> mode;
  std::optional<bool> denoise;
  std::optional<uint32_t> spp, maxDepth, width, height;
  std::optional<FrameFormat> format;
  std::optional<float> exposure;
};
struct ControlMessage {
  enum class Type { Camera, Config, StatsRequest } type = Type::StatsRequest;
  CameraControl camera;
  ConfigControl config;
};

// Throws ProtocolError for malformed JSON, unknown types and out-of-range values.
ControlMessage parse_control(std::string_view text);
render::CameraState apply_camera(render::CameraState base, const CameraControl &c);

std::string stats_json(const DisplayFrame &frame);
std::string ack_json(ControlMessage::Type type, uint64_t generation);

} // namespace elephant::dfb

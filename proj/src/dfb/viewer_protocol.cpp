// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/dfb/viewer_protocol.hpp"

#include "elephant/core/error.hpp"
#include "elephant/render/output.hpp"

#include <json.hpp>

#include <cmath>
#include <cstring>

namespace elephant::dfb {

using nlohmann::json;

namespace {

void put32(std::vector<uint8_t> &out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(uint8_t(v >> (8 * i)));
}
void put16(std::vector<uint8_t> &out, uint16_t v) {
  out.push_back(uint8_t(v));
  out.push_back(uint8_t(v >> 8));
}
uint32_t get32(const uint8_t *p) { return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 | uint32_t(p[3]) << 24; }
uint16_t get16(const uint8_t *p) { return uint16_t(p[0] | p[1] << 8); }

Vec3f vec_field(const json &j, const char *name) {
  const json &v = j.at(name);
  if (!v.is_array() || v.size() != 3) throw ProtocolError(std::string(name) + " must be an array of 3 numbers");
  Vec3f out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number()) throw ProtocolError(std::string(name) + " must be an array of 3 numbers");
    const float x = v[i].get<float>();
    if (!std::isfinite(x)) throw ProtocolError(std::string(name) + " must be finite");
    (i == 0 ? out.x : i == 1 ? out.y : out.z) = x;
  }
  return out;
}

uint32_t positive(const json &j, const char *name, uint32_t max) {
  const json &v = j.at(name);
  if (!v.is_number_integer() || v.get<int64_t>() < 1 || v.get<int64_t>() > int64_t(max))
    throw ProtocolError(std::string(name) + " must be an integer in [1, " + std::to_string(max) + "]");
  return v.get<uint32_t>();
}

const char *type_name(ControlMessage::Type t) {
  switch (t) {
  case ControlMessage::Type::Camera: return "camera";
  case ControlMessage::Type::Config: return "config";
  case ControlMessage::Type::StatsRequest: return "stats-request";
  }
  return "?";
}

} // namespace

std::vector<uint8_t> encode_frame_message(const FrameHeader &h, std::span<const uint8_t> payload) {
  std::vector<uint8_t> out;
  out.reserve(kFrameHeaderBytes + payload.size());
  put32(out, h.frameIndex);
  put32(out, h.frameInSequence);
  put16(out, h.mode);
  put16(out, h.format);
  put32(out, h.width);
  put32(out, h.height);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

FrameHeader decode_frame_header(std::span<const uint8_t> m) {
  if (m.size() < kFrameHeaderBytes) throw ProtocolError("frame message shorter than its header");
  FrameHeader h;
  h.frameIndex = get32(&m[0]);
  h.frameInSequence = get32(&m[4]);
  h.mode = get16(&m[8]);
  h.format = get16(&m[10]);
  h.width = get32(&m[12]);
  h.height = get32(&m[16]);
  return h;
}

std::vector<uint8_t> make_frame_message(const DisplayFrame &frame, FrameFormat format, float exposure) {
  const auto rgb = render::display_rgb8(frame.image, frame.mode, exposure);
  FrameHeader h{frame.frameIndex, frame.frameInSequence, uint16_t(frame.mode), uint16_t(format), frame.image.width,
                frame.image.height};
  if (format == FrameFormat::Png) return encode_frame_message(h, render::encode_png(rgb, h.width, h.height));
  return encode_frame_message(h, rgb);
}

ControlMessage parse_control(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw ProtocolError(std::string("malformed control message: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ProtocolError("control message needs a string 'type'");
  ControlMessage c;
  const std::string type = j["type"];
  try {
    if (type == "camera") {
      c.type = ControlMessage::Type::Camera;
      if (j.contains("position")) c.camera.position = vec_field(j, "position");
      if (j.contains("target")) c.camera.target = vec_field(j, "target");
      if (j.contains("up")) c.camera.up = vec_field(j, "up");
      if (j.contains("fov")) {
        if (!j["fov"].is_number()) throw ProtocolError("fov must be a number");
        const float fov = j["fov"].get<float>();
        if (!(fov > 0.f && fov < 180.f)) throw ProtocolError("fov must lie in (0, 180)");
        c.camera.fov = fov;
      }
    } else if (type == "config") {
      c.type = ControlMessage::Type::Config;
      if (j.contains("mode")) {
        if (!j["mode"].is_string()) throw ProtocolError("mode must be a string");
        try {
          c.config.mode = render::parse_mode(j["mode"].get<std::string>());
        } catch (const Error &e) {
          throw ProtocolError(e.what());
        }
      }
      if (j.contains("denoise")) {
        if (!j["denoise"].is_boolean()) throw ProtocolError("denoise must be a boolean");
        c.config.denoise = j["denoise"].get<bool>();
      }
      if (j.contains("spp")) c.config.spp = positive(j, "spp", 4096);
      if (j.contains("maxDepth")) c.config.maxDepth = positive(j, "maxDepth", 64);
      if (j.contains("width")) c.config.width = positive(j, "width", 8192);
      if (j.contains("height")) c.config.height = positive(j, "height", 8192);
      if (j.contains("format")) {
        const std::string f = j["format"].is_string() ? j["format"].get<std::string>() : "";
        if (f == "raw") c.config.format = FrameFormat::RawSrgb8;
        else if (f == "png") c.config.format = FrameFormat::Png;
        else throw ProtocolError("format must be \"raw\" or \"png\"");
      }
      if (j.contains("exposure")) {
        if (!j["exposure"].is_number() || !(j["exposure"].get<float>() > 0.f))
          throw ProtocolError("exposure must be a positive number");
        c.config.exposure = j["exposure"].get<float>();
      }
    } else if (type == "stats-request") {
      c.type = ControlMessage::Type::StatsRequest;
    } else {
      throw ProtocolError("unknown control type '" + type + "'");
    }
  } catch (const json::exception &e) {
    throw ProtocolError(std::string("malformed control message: ") + e.what());
  }
  return c;
}

render::CameraState apply_camera(render::CameraState base, const CameraControl &c) {
  if (c.position) base.position = *c.position;
  if (c.target) base.lookAt = *c.target;
  if (c.up) base.up = *c.up;
  if (c.fov) base.fovY = *c.fov;
  return base;
}

std::string stats_json(const DisplayFrame &frame) {
  json shares = json::object();
  const auto s = frame.stats.shares();
  for (std::size_t c = 0; c < render::kCategoryCount; ++c)
    shares[std::string(render::category_label(render::Category(c)))] = 100.0 * s[c];
  json j = {{"type", "stats"},
            {"frameIndex", frame.frameIndex},
            {"frameInSequence", frame.frameInSequence},
            {"frameMillis", frame.stats.frameMillis},
            {"sharePercents", shares},
            {"raysPerPixel", frame.stats.rays_per_pixel()},
            {"spp", frame.samplesPerPixel},
            {"denoiseMillis", frame.denoiseMillis},
            {"mode", render::mode_name(frame.mode)}};
  return j.dump();
}

std::string ack_json(ControlMessage::Type type, uint64_t generation) {
  return json{{"type", "ack"}, {"for", type_name(type)}, {"generation", generation}}.dump();
}

} // namespace elephant::dfb

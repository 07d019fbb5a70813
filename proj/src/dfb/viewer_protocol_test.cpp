// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/dfb/viewer_protocol.hpp"

#include "elephant/core/error.hpp"
#include "elephant/render/output.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace elephant;
using namespace elephant::dfb;

TEST_CASE("frame header layout") {
  const FrameHeader h{0x01020304, 2, 4, 1, 640, 480};
  const std::vector<uint8_t> payload{9, 8, 7};
  const auto m = encode_frame_message(h, payload);
  REQUIRE(m.size() == kFrameHeaderBytes + 3);
  CHECK(m[0] == 0x04);
  CHECK(m[3] == 0x01);
  CHECK(m[8] == 4);
  CHECK(m[10] == 1);
  CHECK(m[12] == (640 & 0xff));
  CHECK(m[13] == (640 >> 8));
  CHECK(decode_frame_header(m) == h);
  CHECK(m.back() == 7);
  CHECK_THROWS_AS(decode_frame_header(std::span(m).first(19)), ProtocolError);
}

TEST_CASE("frame messages in both formats") {
  DisplayFrame f;
  f.frameIndex = 3;
  f.frameInSequence = 2;
  f.image = ImageRgb{4, 2, Rgb{1.f}};
  const auto raw = make_frame_message(f, FrameFormat::RawSrgb8);
  CHECK(raw.size() == kFrameHeaderBytes + 4 * 2 * 3);
  CHECK(raw[kFrameHeaderBytes] == 188);
  const auto png = make_frame_message(f, FrameFormat::Png);
  const auto h = decode_frame_header(png);
  CHECK(h.format == 1);
  uint32_t w = 0, ht = 0;
  const auto decoded = render::decode_png(std::vector<uint8_t>(png.begin() + kFrameHeaderBytes, png.end()), w, ht);
  CHECK(std::equal(decoded.begin(), decoded.end(), raw.begin() + kFrameHeaderBytes));
  f.mode = render::RenderMode::CostHeat;
  f.image = ImageRgb{1, 1, Rgb{1.f, 0.f, 0.f}};
  const auto heat = make_frame_message(f, FrameFormat::RawSrgb8);
  CHECK(decode_frame_header(heat).mode == uint16_t(render::RenderMode::CostHeat));
  CHECK(heat[kFrameHeaderBytes] == 255);
}

TEST_CASE("control parsing") {
  auto cam = parse_control(R"({"type":"camera","position":[1,2,3],"fov":30})");
  CHECK(cam.type == ControlMessage::Type::Camera);
  render::CameraState base;
  const auto moved = apply_camera(base, cam.camera);
  CHECK(moved.position == Vec3f{1, 2, 3});
  CHECK(moved.fovY == 30.f);
  CHECK(moved.lookAt == base.lookAt);

  auto cfg = parse_control(R"({"type":"config","mode":"costheat","denoise":false,"spp":2,"format":"raw"})");
  CHECK(cfg.type == ControlMessage::Type::Config);
  CHECK(cfg.config.mode == render::RenderMode::CostHeat);
  CHECK(cfg.config.denoise == false);
  CHECK(cfg.config.spp == 2u);
  CHECK(cfg.config.format == FrameFormat::RawSrgb8);
  CHECK_FALSE(cfg.config.maxDepth);

  CHECK(parse_control(R"({"type":"stats-request"})").type == ControlMessage::Type::StatsRequest);

  for (const char *bad : {"not json", "[]", R"({"kind":"camera"})", R"({"type":"zoom"})",
                          R"({"type":"camera","position":[1,2]})", R"({"type":"camera","fov":"wide"})",
                          R"({"type":"camera","fov":0})", R"({"type":"config","mode":"sparkle"})",
                          R"({"type":"config","spp":0})", R"({"type":"config","spp":1.5})",
                          R"({"type":"config","format":"jpeg"})", R"({"type":"config","denoise":1})"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_control(bad), ProtocolError);
  }
}

TEST_CASE("stats json") {
  DisplayFrame f;
  f.frameIndex = 7;
  f.samplesPerPixel = 16;
  f.stats.categorySeconds = {0.7, 0.07, 0.02, 0.2, 0.01};
  f.stats.raysTraced = 300;
  f.stats.pixelCount = 100;
  f.stats.frameMillis = 12.5;
  const auto j = nlohmann::json::parse(stats_json(f));
  CHECK(j["type"] == "stats");
  CHECK(j["frameMillis"].get<double>() == 12.5);
  CHECK(j["raysPerPixel"].get<double>() == 3.0);
  CHECK(j["spp"].get<int>() == 16);
  CHECK(j["sharePercents"]["Traversal & Intersect"].get<double>() == doctest::Approx(70.0));
  double total = 0;
  for (const auto &[k, v] : j["sharePercents"].items()) total += v.get<double>();
  CHECK(total == doctest::Approx(100.0));
  const auto ack = nlohmann::json::parse(ack_json(ControlMessage::Type::Camera, 3));
  CHECK(ack["for"] == "camera");
  CHECK(ack["generation"] == 3);
}

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/dfb/wire.hpp"

#include "elephant/core/error.hpp"

#include <doctest.h>

#include <cstring>

using namespace elephant;
using namespace elephant::dfb;

namespace {

uint32_t read_u32(const std::vector<std::byte> &b, std::size_t at) {
  return uint32_t(b[at]) | uint32_t(b[at + 1]) << 8 | uint32_t(b[at + 2]) << 16 | uint32_t(b[at + 3]) << 24;
}

template <class T> T roundtrip(const T &m) {
  const Message back = decode_message(encode_message(Message(m)));
  REQUIRE(std::holds_alternative<T>(back));
  return std::get<T>(back);
}

} // namespace

TEST_CASE("frame layout is length, tag, payload") {
  const auto bytes = encode_message(Hello{0x01020304});
  REQUIRE(bytes.size() == 4 + 2 + 4);
  CHECK(read_u32(bytes, 0) == 6);
  CHECK(uint16_t(bytes[4]) == uint16_t(MessageTag::Hello));
  CHECK(uint8_t(bytes[6]) == 0x04);
  CHECK(uint8_t(bytes[9]) == 0x01);
}

TEST_CASE("every message roundtrips") {
  CHECK(roundtrip(Hello{7}) == Hello{7});

  SetScene s{{std::byte{1}, std::byte{2}, std::byte{250}}, "a/b.biff", "dir", 0xfeedfacecafebeefull};
  CHECK(roundtrip(s) == s);

  SetConfig c;
  c.config.maxPathDepth = 3;
  c.config.samplesPerFrame = 4;
  c.config.mode = render::RenderMode::CostHeat;
  c.config.deterministic = true;
  c.config.seed = 123456789012345ull;
  c.config.threads = -1;
  c.config.profile = false;
  c.width = 640;
  c.height = 480;
  const SetConfig c2 = roundtrip(c);
  CHECK(c2.config.maxPathDepth == 3);
  CHECK(c2.config.samplesPerFrame == 4);
  CHECK(c2.config.mode == render::RenderMode::CostHeat);
  CHECK(c2.config.deterministic);
  CHECK(c2.config.seed == 123456789012345ull);
  CHECK(c2.config.threads == -1);
  CHECK_FALSE(c2.config.profile);
  CHECK(c2.width == 640);
  CHECK(c2.height == 480);

  RenderFrame f{9, {}, 2, 3};
  f.camera.position = {1, 2, 3};
  f.camera.fovY = 33.f;
  const RenderFrame f2 = roundtrip(f);
  CHECK(f2.frameIndex == 9);
  CHECK(f2.camera == f.camera);
  CHECK(f2.rank == 2);
  CHECK(f2.workerCount == 3);

  FrameComplete fc;
  fc.frameIndex = 4;
  fc.stats.categorySeconds = {1, 2, 3, 4, 5};
  fc.stats.raysTraced = 77;
  fc.stats.pixelCount = 5;
  fc.stats.frameMillis = 1.5;
  fc.stats.traversal.nodeVisits = 11;
  const FrameComplete fc2 = roundtrip(fc);
  CHECK(fc2.stats.categorySeconds == fc.stats.categorySeconds);
  CHECK(fc2.stats.raysTraced == 77);
  CHECK(fc2.stats.frameMillis == 1.5);
  CHECK(fc2.stats.traversal.nodeVisits == 11);

  CameraUpdate cu;
  cu.camera.lookAt = {0, 1, 0};
  CHECK(roundtrip(cu).camera == cu.camera);
  CHECK(std::holds_alternative<Shutdown>(decode_message(encode_message(Shutdown{}))));
}

TEST_CASE("tile results carry the full tile and roundtrip bit-exactly") {
  render::FrameBuffer fb(70, 10);
  for (std::size_t i = 0; i < fb.pixel_count(); ++i) {
    fb.color[i] = Rgb{float(i), -0.f, 1e-40f};
    fb.albedo[i] = Rgb{0.5f};
    fb.normal[i] = Rgb{0, 0, 1};
    fb.cost[i] = uint32_t(i * 3);
  }
  const TileResult t = make_tile_result(fb, 2, 1, 8);
  CHECK(t.width == 6);
  CHECK(t.height == 10);
  const auto bytes = encode_message(t);
  CHECK(bytes.size() == 4 + 2 + kTileResultHeaderBytes + tile_payload_bytes(6, 10));
  const TileResult back = roundtrip(t);
  CHECK(std::memcmp(back.color.data(), t.color.data(), t.color.size() * sizeof(Rgb)) == 0);
  CHECK(back == t);

  render::FrameBuffer dst(70, 10);
  accumulate_tile(dst, back, 1);
  CHECK(dst.color[dst.index(64, 0)] == fb.color[fb.index(64, 0)]);
  CHECK(dst.cost[dst.index(69, 9)] == fb.cost[fb.index(69, 9)]);
  CHECK(dst.samples[dst.index(69, 9)] == 1);
  CHECK(dst.samples[0] == 0);
  TileResult wrong = back;
  wrong.tileIndex = 0;
  CHECK_THROWS_AS(accumulate_tile(dst, wrong, 1), ProtocolError);
}

TEST_CASE("malformed frames are rejected") {
  auto bytes = encode_message(Hello{1});
  CHECK_THROWS_AS(decode_message(std::span(bytes).first(5)), ProtocolError);
  auto longer = bytes;
  longer.push_back(std::byte{0});
  CHECK_THROWS_AS(decode_message(longer), ProtocolError);
  longer[0] = std::byte{7};
  CHECK_THROWS_AS(decode_message(longer), ProtocolError);
  bytes[4] = std::byte{99};
  CHECK_THROWS_AS(decode_message(bytes), ProtocolError);
  auto frame = encode_message(RenderFrame{0, {}, 0, 1});
  frame[frame.size() - 4] = std::byte{0};
  CHECK_THROWS_AS(decode_message(frame), ProtocolError);
}

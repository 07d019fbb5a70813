// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/dfb/worker.hpp"

#include "elephant/core/error.hpp"
#include "elephant/dfb/head.hpp"
#include "elephant/scene/generator.hpp"

#include <doctest.h>

#include <thread>

using namespace elephant;
using namespace elephant::dfb;

namespace {

render::RenderConfig det_config() {
  render::RenderConfig c;
  c.deterministic = true;
  c.seed = 4;
  return c;
}

struct Rig {
  std::unique_ptr<Connection> head, end;
  std::thread thread;
  std::exception_ptr error;

  Rig() {
    auto [h, w] = make_in_process_pair();
    head = std::move(h);
    end = std::move(w);
    thread = std::thread([this] {
      try {
        run_worker(*end, 3);
      } catch (...) {
        error = std::current_exception();
      }
    });
    auto hello = head->receive();
    REQUIRE(hello);
    CHECK(std::get<Hello>(*hello).workerId == 3);
  }
  ~Rig() {
    head->close();
    join();
  }
  void join() {
    if (thread.joinable()) thread.join();
  }
  Message next() {
    auto m = head->receive();
    REQUIRE(m);
    return *m;
  }
};

const ingest::SceneDesc &test_scene() {
  static const ingest::SceneDesc s = scene::generate_challenge_scene(scene::preset("mini"), 2).scene;
  return s;
}

void send_scene(Connection &c) {
  const SceneSource src = scene_source(test_scene(), {});
  c.send(SetScene{src.biff, "", "", src.contentHash});
}

} // namespace

TEST_CASE("one worker renders every tile then completes the frame") {
  Rig rig;
  send_scene(*rig.head);
  rig.head->send(SetConfig{det_config(), 128, 100});
  rig.head->send(RenderFrame{0, test_scene().camera, 0, 1});
  std::vector<uint32_t> tiles;
  for (int i = 0; i < 4; ++i) {
    const Message m = rig.next();
    REQUIRE(std::holds_alternative<TileResult>(m));
    tiles.push_back(std::get<TileResult>(m).tileIndex);
  }
  CHECK(tiles == std::vector<uint32_t>{0, 1, 2, 3});
  const Message done = rig.next();
  REQUIRE(std::holds_alternative<FrameComplete>(done));
  CHECK(std::get<FrameComplete>(done).frameIndex == 0);
  CHECK(std::get<FrameComplete>(done).stats.pixelCount == 128 * 100);
  rig.head->send(Shutdown{});
  rig.join();
  CHECK_FALSE(rig.error);
}

TEST_CASE("worker tiles equal the same tiles rendered locally") {
  Rig rig;
  send_scene(*rig.head);
  render::RenderConfig cfg = det_config();
  cfg.samplesPerFrame = 2;
  rig.head->send(SetConfig{cfg, 150, 70});
  rig.head->send(RenderFrame{5, test_scene().camera, 1, 2});

  render::World world(test_scene());
  render::FrameBuffer local(150, 70);
  render::render_frame(world, test_scene().camera, local, cfg, 5);
  for (uint32_t t : {1u, 3u, 5u}) {
    const Message m = rig.next();
    REQUIRE(std::holds_alternative<TileResult>(m));
    const auto &r = std::get<TileResult>(m);
    CHECK(r.tileIndex == t);
    CHECK(r.sampleCount == 2);
    CHECK(r == make_tile_result(local, 5, t, 2));
  }
  CHECK(std::holds_alternative<FrameComplete>(rig.next()));
}

TEST_CASE("camera update restarts the sample count") {
  Rig rig;
  send_scene(*rig.head);
  render::RenderConfig cfg = det_config();
  cfg.samplesPerFrame = 3;
  rig.head->send(SetConfig{cfg, 64, 64});
  auto frame = [&](uint32_t f) {
    rig.head->send(RenderFrame{f, test_scene().camera, 0, 1});
    const Message m = rig.next();
    REQUIRE(std::holds_alternative<TileResult>(m));
    CHECK(std::holds_alternative<FrameComplete>(rig.next()));
    return std::get<TileResult>(m).sampleCount;
  };
  CHECK(frame(0) == 3);
  CHECK(frame(1) == 6);
  CHECK(frame(1) == 6); // a repeated frame is not counted twice
  render::CameraState moved = test_scene().camera;
  moved.position.x += 1.f;
  rig.head->send(CameraUpdate{moved});
  CHECK(frame(2) == 3);
}

TEST_CASE("frames before the scene are a protocol error") {
  Rig rig;
  rig.head->send(RenderFrame{0, {}, 0, 1});
  rig.join();
  REQUIRE(rig.error);
  CHECK_THROWS_AS(std::rethrow_exception(rig.error), ProtocolError);
  CHECK_FALSE(rig.head->receive().has_value());
}

TEST_CASE("scene bytes must match their hash") {
  Rig rig;
  SceneSource src = scene_source(test_scene(), {});
  rig.head->send(SetScene{src.biff, "", "", src.contentHash ^ 1});
  rig.join();
  REQUIRE(rig.error);
  CHECK_THROWS_AS(std::rethrow_exception(rig.error), SceneHashMismatch);
}

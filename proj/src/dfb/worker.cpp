// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/dfb/worker.hpp"

#include "elephant/core/error.hpp"
#include "elephant/core/hash.hpp"
#include "elephant/dfb/ownership.hpp"
#include "elephant/ingest/biff.hpp"

#include <cstring>
#include <fstream>
#include <iterator>

namespace elephant::dfb {

namespace {

std::vector<std::byte> read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open scene '" + path + "'");
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::byte> out(raw.size());
  std::memcpy(out.data(), raw.data(), raw.size());
  return out;
}

class WorkerState {
public:
  WorkerState(Connection &c, const WorkerOptions &o) : conn_(c), options_(o) {}

  // False on Shutdown.
  bool handle(Message &&m) {
    return std::visit([&](auto &&msg) { return on(std::move(msg)); }, std::move(m));
  }

private:
  bool on(SetScene &&s) {
    std::vector<std::byte> bytes = s.biff.empty() ? read_file(s.path) : std::move(s.biff);
    if (fnv1a64(bytes) != s.contentHash) throw SceneHashMismatch();
    world_ = std::make_unique<render::World>(ingest::decode_biff(bytes), s.baseDir, options_.world);
    camera_ = world_->camera();
    reset();
    return true;
  }
  bool on(SetConfig &&c) {
    if (!world_) throw ProtocolError("SetConfig before SetScene");
    config_ = c.config;
    fb_ = render::FrameBuffer(c.width, c.height);
    configured_ = true;
    reset();
    return true;
  }
  bool on(CameraUpdate &&c) {
    if (!world_) throw ProtocolError("CameraUpdate before SetScene");
    camera_ = c.camera;
    reset();
    return true;
  }
  bool on(RenderFrame &&f) {
    if (!world_ || !configured_) throw ProtocolError("RenderFrame before SetScene and SetConfig");
    camera_ = f.camera;
    // A re-sent frame after a worker loss does not add samples twice.
    if (!lastFrame_ || *lastFrame_ != f.frameIndex) accumulated_ += std::max(1u, config_.samplesPerFrame);
    lastFrame_ = f.frameIndex;

    const auto tiles = assign_tiles(fb_.tile_count(), f.workerCount).owned(f.rank);
    fb_.reset();
    const render::RenderStats stats = render::render_tiles(*world_, camera_, fb_, config_, f.frameIndex, tiles);
    for (const uint32_t t : tiles) conn_.send(make_tile_result(fb_, f.frameIndex, t, accumulated_));
    conn_.send(FrameComplete{f.frameIndex, stats});
    return true;
  }
  bool on(Shutdown &&) { return false; }
  template <class T> bool on(T &&) {
    throw ProtocolError(std::string("unexpected message ") + tag_name(tag_of(Message(T{}))) + " at worker");
  }

  void reset() {
    accumulated_ = 0;
    lastFrame_.reset();
  }

  Connection &conn_;
  const WorkerOptions &options_;
  std::unique_ptr<render::World> world_;
  render::CameraState camera_;
  render::RenderConfig config_;
  render::FrameBuffer fb_;
  bool configured_ = false;
  uint32_t accumulated_ = 0;
  std::optional<uint32_t> lastFrame_;
};

} // namespace

void run_worker(Connection &connection, uint32_t workerId, const WorkerOptions &options) {
  WorkerState state(connection, options);
  connection.send(Hello{workerId});
  try {
    while (auto m = connection.receive())
      if (!state.handle(std::move(*m))) break;
  } catch (...) {
    connection.close();
    throw;
  }
}

} // namespace elephant::dfb

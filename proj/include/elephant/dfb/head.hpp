// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/dfb/queue.hpp"
#include "elephant/dfb/transport.hpp"
#include "elephant/dfb/worker.hpp"
#include "elephant/ingest/scene_desc.hpp"
#include "elephant/render/denoise.hpp"

#include <atomic>
#include <exception>
#include <filesystem>
#include <functional>
#include <memory>
#include <thread>
#include <vector>

namespace elephant::dfb {

// What workers receive in SetScene, plus the initial camera.
struct SceneSource {
  std::vector<std::byte> biff; // empty when workers read path themselves
  std::string path;
  std::string baseDir;
  uint64_t contentHash = 0;
  render::CameraState camera;
};

SceneSource scene_source(const ingest::SceneDesc &scene, const std::filesystem::path &baseDir);
// Workers on the same file system read the BIFF file; otherwise the bytes travel inline.
SceneSource scene_source_from_biff(const std::filesystem::path &path, bool inlineBytes = true);

struct HeadOptions {
  render::RenderConfig config;
  uint32_t width = 1536, height = 644;
  bool denoise = true;
  render::DenoiseParams denoiseParams;
  std::size_t queueCapacity = 2;
};

// A committed frame after the denoise stage.
struct DisplayFrame {
  uint32_t frameIndex = 0;
  uint32_t frameInSequence = 0; // 1 for the first frame after a camera or config change
  uint64_t generation = 0;      // number of camera and config changes applied before this frame
  render::RenderMode mode = render::RenderMode::PathTrace;
  uint32_t samplesPerPixel = 0;
  bool denoised = false;
  ImageRgb image; // linear radiance, or the heat ramp for CostHeat
  render::RenderStats stats;
  double denoiseMillis = 0.0;
};

// Seconds since the head started. Unset stages stay negative.
struct FrameTimes {
  uint32_t frameIndex = 0;
  double renderStart = -1, renderEnd = -1, denoiseStart = -1, denoiseEnd = -1, displayEnd = -1;
};

using DisplaySink = std::function<void(DisplayFrame &&)>;

// Head node of the distributed framebuffer. Owns the accumulation buffer and the
// camera; workers render their round-robin tiles of each frame. Committed frames
// flow through a denoise stage and a display stage, each on its own thread and
// fed by a bounded queue, while the caller renders the next frame.
class Head {
public:
  Head(std::vector<std::unique_ptr<Connection>> workers, SceneSource scene, HeadOptions options,
       DisplaySink sink = {});
  ~Head();
  Head(const Head &) = delete;
  Head &operator=(const Head &) = delete;

  // Renders, gathers and commits the next frame. Lost workers are dropped and the
  // frame is rendered again by the rest; throws WorkerLost when none remain.
  render::RenderStats step();

  // Both restart accumulation.
  void set_camera(const render::CameraState &camera);
  void set_config(const render::RenderConfig &config, uint32_t width, uint32_t height);
  void set_denoise(bool on) { denoise_ = on; }

  const render::FrameBuffer &framebuffer() const { return fb_; }
  const render::CameraState &camera() const { return camera_; }
  const render::RenderConfig &config() const { return options_.config; }
  uint32_t next_frame_index() const { return nextFrame_; }
  uint32_t frame_in_sequence() const { return frameInSequence_; }
  uint64_t generation() const { return generation_; }
  std::vector<uint32_t> live_worker_ids() const;
  uint32_t lost_worker_count() const { return lost_; }

  // Blocks until every committed frame has left the display stage.
  void drain();
  std::vector<FrameTimes> timeline() const;
  void shutdown();

private:
  struct Slot {
    uint32_t id = 0;
    std::unique_ptr<Connection> conn;
    std::thread reader;
    bool live = true;
  };
  struct Event {
    std::size_t slot = 0;
    std::optional<Message> message; // empty: connection lost
  };
  struct Snapshot {
    DisplayFrame frame;
    ImageRgb color, albedo, normal;
  };

  void broadcast(const Message &m);
  void drop_worker(std::size_t slot);
  void restart_accumulation();
  double now() const;
  FrameTimes &times_for(uint32_t frameIndex);
  void denoise_loop();
  void display_loop();

  HeadOptions options_;
  DisplaySink sink_;
  std::vector<Slot> slots_;
  BoundedQueue<Event> events_;
  render::FrameBuffer fb_;
  render::CameraState camera_;
  uint32_t nextFrame_ = 0, frameInSequence_ = 0, lost_ = 0;
  uint64_t generation_ = 0;
  std::atomic<bool> denoise_{true};
  std::chrono::steady_clock::time_point start_;

  BoundedQueue<Snapshot> toDenoise_;
  BoundedQueue<DisplayFrame> toDisplay_;
  std::thread denoiser_, display_;
  mutable std::mutex timesMutex_;
  std::condition_variable displayed_;
  std::vector<FrameTimes> times_;
  uint64_t committed_ = 0, displayedCount_ = 0;
  std::exception_ptr stageError_;
  bool shutDown_ = false;
};

// Runs n workers on threads connected through in-process transports.
class LocalWorkers {
public:
  explicit LocalWorkers(uint32_t count, WorkerOptions options = {});
  ~LocalWorkers();
  LocalWorkers(const LocalWorkers &) = delete;
  LocalWorkers &operator=(const LocalWorkers &) = delete;

  // Head-side endpoints, worker ids 0..n-1.
  std::vector<std::unique_ptr<Connection>> take_connections() { return std::move(heads_); }
  // Waits for the worker threads; rethrows the first worker failure.
  void join();

private:
  WorkerOptions options_;
  std::vector<std::unique_ptr<Connection>> heads_, ends_;
  std::vector<std::thread> threads_;
  std::vector<std::exception_ptr> errors_;
};

} // namespace elephant::dfb

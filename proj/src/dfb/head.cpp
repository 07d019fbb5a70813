// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/dfb/head.hpp"

#include "elephant/core/error.hpp"
#include "elephant/core/hash.hpp"
#include "elephant/ingest/biff.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

namespace elephant::dfb {

SceneSource scene_source(const ingest::SceneDesc &scene, const std::filesystem::path &baseDir) {
  SceneSource s;
  s.biff = ingest::encode_biff(scene);
  s.contentHash = fnv1a64(s.biff);
  s.baseDir = baseDir.string();
  s.camera = scene.camera;
  return s;
}

SceneSource scene_source_from_biff(const std::filesystem::path &path, bool inlineBytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open scene '" + path.string() + "'");
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::byte> bytes(raw.size());
  std::memcpy(bytes.data(), raw.data(), raw.size());
  SceneSource s;
  s.contentHash = fnv1a64(bytes);
  s.camera = ingest::decode_biff(bytes).camera;
  s.baseDir = path.parent_path().string();
  s.path = std::filesystem::absolute(path).string();
  if (inlineBytes) s.biff = std::move(bytes);
  return s;
}

Head::Head(std::vector<std::unique_ptr<Connection>> workers, SceneSource scene, HeadOptions options,
           DisplaySink sink)
    : options_(std::move(options)), sink_(std::move(sink)), events_(std::numeric_limits<std::size_t>::max()),
      fb_(options_.width, options_.height), camera_(scene.camera), denoise_(options_.denoise),
      start_(std::chrono::steady_clock::now()), toDenoise_(options_.queueCapacity),
      toDisplay_(options_.queueCapacity) {
  if (workers.empty()) throw ZeroWorkers();
  slots_.resize(workers.size());
  for (std::size_t i = 0; i < workers.size(); ++i) {
    Slot &s = slots_[i];
    s.conn = std::move(workers[i]);
    auto hello = s.conn->receive();
    if (!hello || !std::holds_alternative<Hello>(*hello)) throw ProtocolError("worker did not introduce itself");
    s.id = std::get<Hello>(*hello).workerId;
  }
  // Ranks follow worker ids.
  std::sort(slots_.begin(), slots_.end(), [](const Slot &a, const Slot &b) { return a.id < b.id; });
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    slots_[i].reader = std::thread([this, i] {
      Connection &c = *slots_[i].conn;
      for (;;) {
        std::optional<Message> m;
        try {
          m = c.receive();
        } catch (const Error &) {
          m.reset();
        }
        const bool lost = !m.has_value();
        events_.push(Event{i, std::move(m)});
        if (lost) return;
      }
    });
  }

  broadcast(SetScene{std::move(scene.biff), scene.path, scene.baseDir, scene.contentHash});
  broadcast(SetConfig{options_.config, options_.width, options_.height});

  denoiser_ = std::thread([this] { denoise_loop(); });
  display_ = std::thread([this] { display_loop(); });
}

Head::~Head() { shutdown(); }

double Head::now() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void Head::broadcast(const Message &m) {
  for (Slot &s : slots_)
    if (s.live) s.conn->send(m);
}

void Head::drop_worker(std::size_t slot) {
  Slot &s = slots_[slot];
  if (!s.live) return;
  s.live = false;
  ++lost_;
  s.conn->close();
}

std::vector<uint32_t> Head::live_worker_ids() const {
  std::vector<uint32_t> ids;
  for (const Slot &s : slots_)
    if (s.live) ids.push_back(s.id);
  return ids;
}

FrameTimes &Head::times_for(uint32_t frameIndex) {
  for (auto it = times_.rbegin(); it != times_.rend(); ++it)
    if (it->frameIndex == frameIndex) return *it;
  times_.push_back(FrameTimes{frameIndex});
  return times_.back();
}

render::RenderStats Head::step() {
  if (shutDown_) throw Error("head is shut down");
  const uint32_t f = nextFrame_;
  const uint32_t tileCount = fb_.tile_count();
  const uint32_t spp = std::max(1u, options_.config.samplesPerFrame);
  const auto wallStart = std::chrono::steady_clock::now();
  {
    std::lock_guard lock(timesMutex_);
    times_for(f).renderStart = now();
  }

  std::vector<std::optional<TileResult>> staged;
  std::vector<std::optional<render::RenderStats>> partial;
  uint32_t received = 0;
  for (;;) {
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if (slots_[i].live) live.push_back(i);
    if (live.empty()) throw WorkerLost(slots_.empty() ? 0 : slots_.back().id);

    staged.assign(tileCount, std::nullopt);
    partial.assign(slots_.size(), std::nullopt);
    received = 0;
    for (std::size_t r = 0; r < live.size(); ++r)
      slots_[live[r]].conn->send(RenderFrame{f, camera_, uint32_t(r), uint32_t(live.size())});

    bool aborted = false;
    auto complete = [&] {
      if (received != tileCount) return false;
      for (std::size_t i : live)
        if (slots_[i].live && !partial[i]) return false;
      return true;
    };
    while (!complete()) {
      auto ev = events_.pop();
      if (!ev) throw Error("event queue closed");
      if (!slots_[ev->slot].live) continue;
      if (!ev->message) {
        drop_worker(ev->slot);
        aborted = true;
        break;
      }
      Message &m = *ev->message;
      if (auto *t = std::get_if<TileResult>(&m)) {
        if (t->frameIndex != f) continue;
        if (t->tileIndex >= tileCount) {
          drop_worker(ev->slot);
          aborted = true;
          break;
        }
        if (!staged[t->tileIndex]) {
          staged[t->tileIndex] = std::move(*t);
          ++received;
        }
      } else if (auto *c = std::get_if<FrameComplete>(&m)) {
        if (c->frameIndex == f) partial[ev->slot] = c->stats;
      } else {
        drop_worker(ev->slot);
        aborted = true;
        break;
      }
    }
    if (!aborted) break;
  }

  for (const auto &t : staged) accumulate_tile(fb_, *t, spp);
  render::RenderStats stats;
  for (const auto &p : partial)
    if (p) stats.merge(*p);
  stats.pixelCount = fb_.pixel_count();
  stats.samplesPerPixel = spp;
  stats.frameMillis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - wallStart).count();
  ++nextFrame_;
  ++frameInSequence_;

  Snapshot snap;
  snap.frame.frameIndex = f;
  snap.frame.frameInSequence = frameInSequence_;
  snap.frame.generation = generation_;
  snap.frame.mode = options_.config.mode;
  snap.frame.samplesPerPixel = fb_.samples.empty() ? 0 : fb_.samples[0];
  snap.frame.stats = stats;
  snap.frame.image = render::resolve(fb_, options_.config);
  if (options_.config.mode == render::RenderMode::PathTrace) {
    snap.color = fb_.mean_color();
    snap.albedo = fb_.mean_albedo();
    snap.normal = fb_.mean_normal();
  }
  {
    std::lock_guard lock(timesMutex_);
    times_for(f).renderEnd = now();
    ++committed_;
  }
  if (!toDenoise_.push(std::move(snap))) throw Error("denoise stage stopped");
  return stats;
}

void Head::denoise_loop() {
  try {
    while (auto snap = toDenoise_.pop()) {
      DisplayFrame frame = std::move(snap->frame);
      const bool run = denoise_ && frame.mode == render::RenderMode::PathTrace;
      {
        std::lock_guard lock(timesMutex_);
        times_for(frame.frameIndex).denoiseStart = now();
      }
      if (run) {
        const auto t0 = std::chrono::steady_clock::now();
        frame.image = render::denoise(snap->color, snap->albedo, snap->normal, frame.samplesPerPixel,
                                      options_.denoiseParams);
        frame.denoiseMillis =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        frame.denoised = true;
      }
      {
        std::lock_guard lock(timesMutex_);
        times_for(frame.frameIndex).denoiseEnd = now();
      }
      if (!toDisplay_.push(std::move(frame))) break;
    }
  } catch (...) {
    std::lock_guard lock(timesMutex_);
    stageError_ = std::current_exception();
  }
  toDisplay_.close();
}

void Head::display_loop() {
  while (auto frame = toDisplay_.pop()) {
    const uint32_t f = frame->frameIndex;
    try {
      if (sink_) sink_(std::move(*frame));
    } catch (...) {
      std::lock_guard lock(timesMutex_);
      if (!stageError_) stageError_ = std::current_exception();
    }
    {
      std::lock_guard lock(timesMutex_);
      times_for(f).displayEnd = now();
      ++displayedCount_;
    }
    displayed_.notify_all();
  }
  // Unblock drain() if the pipeline stopped early.
  {
    std::lock_guard lock(timesMutex_);
    displayedCount_ = std::numeric_limits<uint64_t>::max();
  }
  displayed_.notify_all();
}

void Head::drain() {
  std::unique_lock lock(timesMutex_);
  displayed_.wait(lock, [&] { return displayedCount_ >= committed_; });
  if (stageError_) std::rethrow_exception(stageError_);
}

std::vector<FrameTimes> Head::timeline() const {
  std::lock_guard lock(timesMutex_);
  return times_;
}

void Head::restart_accumulation() {
  fb_.reset();
  frameInSequence_ = 0;
  ++generation_;
}

void Head::set_camera(const render::CameraState &camera) {
  camera_ = camera;
  broadcast(CameraUpdate{camera});
  restart_accumulation();
}

void Head::set_config(const render::RenderConfig &config, uint32_t width, uint32_t height) {
  options_.config = config;
  options_.width = width;
  options_.height = height;
  fb_ = render::FrameBuffer(width, height);
  broadcast(SetConfig{config, width, height});
  restart_accumulation();
}

void Head::shutdown() {
  if (shutDown_) return;
  shutDown_ = true;
  toDenoise_.close();
  if (denoiser_.joinable()) denoiser_.join();
  if (display_.joinable()) display_.join();
  broadcast(Shutdown{});
  for (Slot &s : slots_) s.conn->close();
  for (Slot &s : slots_)
    if (s.reader.joinable()) s.reader.join();
  events_.close();
}

LocalWorkers::LocalWorkers(uint32_t count, WorkerOptions options) : options_(std::move(options)) {
  if (count == 0) throw ZeroWorkers();
  errors_.resize(count);
  for (uint32_t i = 0; i < count; ++i) {
    auto [head, worker] = make_in_process_pair();
    heads_.push_back(std::move(head));
    ends_.push_back(std::move(worker));
  }
  for (uint32_t i = 0; i < count; ++i)
    threads_.emplace_back([this, i] {
      try {
        run_worker(*ends_[i], i, options_);
      } catch (...) {
        errors_[i] = std::current_exception();
      }
      ends_[i]->close();
    });
}

LocalWorkers::~LocalWorkers() {
  for (auto &e : ends_) e->close();
  for (auto &t : threads_)
    if (t.joinable()) t.join();
}

void LocalWorkers::join() {
  for (auto &t : threads_)
    if (t.joinable()) t.join();
  for (auto &e : errors_)
    if (e) std::rethrow_exception(e);
}

} // namespace elephant::dfb

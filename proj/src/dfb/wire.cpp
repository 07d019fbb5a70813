// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/dfb/wire.hpp"

#include "elephant/core/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>

namespace elephant::dfb {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T> T to_le(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<std::byte, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return v;
}

class Writer {
public:
  template <class T> void put(T v) {
    v = to_le(v);
    const auto *p = reinterpret_cast<const std::byte *>(&v);
    out.insert(out.end(), p, p + sizeof(T));
  }
  void put(const Vec3f &v) {
    put(v.x);
    put(v.y);
    put(v.z);
  }
  void put_bytes(std::span<const std::byte> b) {
    put(uint64_t(b.size()));
    out.insert(out.end(), b.begin(), b.end());
  }
  void put_string(const std::string &s) { put_bytes(std::as_bytes(std::span(s.data(), s.size()))); }

  std::vector<std::byte> out;
};

class Reader {
public:
  explicit Reader(std::span<const std::byte> in) : in_(in) {}

  template <class T> T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return to_le(v);
  }
  Vec3f vec() {
    Vec3f v;
    v.x = get<float>();
    v.y = get<float>();
    v.z = get<float>();
    return v;
  }
  std::span<const std::byte> bytes() {
    const uint64_t n = get<uint64_t>();
    need(n);
    auto s = in_.subspan(pos_, std::size_t(n));
    pos_ += std::size_t(n);
    return s;
  }
  std::string string() {
    auto b = bytes();
    return std::string(reinterpret_cast<const char *>(b.data()), b.size());
  }
  void finish() const {
    if (pos_ != in_.size()) throw ProtocolError("trailing bytes in message");
  }

private:
  void need(uint64_t n) const {
    if (n > in_.size() - pos_) throw ProtocolError("truncated message");
  }

  std::span<const std::byte> in_;
  std::size_t pos_ = 0;
};

void put_camera(Writer &w, const render::CameraState &c) {
  w.put(c.position);
  w.put(c.lookAt);
  w.put(c.up);
  w.put(c.fovY);
  w.put(c.aspect);
  w.put(c.filmWidth);
  w.put(c.filmHeight);
}

render::CameraState get_camera(Reader &r) {
  render::CameraState c;
  c.position = r.vec();
  c.lookAt = r.vec();
  c.up = r.vec();
  c.fovY = r.get<float>();
  c.aspect = r.get<float>();
  c.filmWidth = r.get<uint32_t>();
  c.filmHeight = r.get<uint32_t>();
  return c;
}

void put_stats(Writer &w, const render::RenderStats &s) {
  for (double c : s.categorySeconds) w.put(c);
  w.put(s.raysTraced);
  w.put(s.pixelCount);
  w.put(s.samplesPerPixel);
  w.put(s.frameMillis);
  w.put(s.fireflies);
  w.put(s.traversal.nodeVisits);
  w.put(s.traversal.primitiveTests);
  w.put(s.traversal.instanceVisits);
}

render::RenderStats get_stats(Reader &r) {
  render::RenderStats s;
  for (double &c : s.categorySeconds) c = r.get<double>();
  s.raysTraced = r.get<uint64_t>();
  s.pixelCount = r.get<uint64_t>();
  s.samplesPerPixel = r.get<uint32_t>();
  s.frameMillis = r.get<double>();
  s.fireflies = r.get<uint64_t>();
  s.traversal.nodeVisits = r.get<uint64_t>();
  s.traversal.primitiveTests = r.get<uint64_t>();
  s.traversal.instanceVisits = r.get<uint64_t>();
  return s;
}

void put_payload(Writer &w, const Hello &m) { w.put(m.workerId); }
void put_payload(Writer &w, const SetScene &m) {
  w.put_bytes(m.biff);
  w.put_string(m.path);
  w.put_string(m.baseDir);
  w.put(m.contentHash);
}
void put_payload(Writer &w, const SetConfig &m) {
  w.put(m.config.maxPathDepth);
  w.put(m.config.samplesPerFrame);
  w.put(uint16_t(m.config.mode));
  w.put(uint8_t(m.config.deterministic));
  w.put(m.config.seed);
  w.put(int32_t(m.config.threads));
  w.put(uint8_t(m.config.profile));
  w.put(m.width);
  w.put(m.height);
}
void put_payload(Writer &w, const RenderFrame &m) {
  w.put(m.frameIndex);
  put_camera(w, m.camera);
  w.put(m.rank);
  w.put(m.workerCount);
}
void put_payload(Writer &w, const TileResult &m) {
  w.put(m.frameIndex);
  w.put(m.tileIndex);
  w.put(m.width);
  w.put(m.height);
  w.put(m.sampleCount);
  for (const auto *buf : {&m.color, &m.albedo, &m.normal})
    for (const Rgb &c : *buf) w.put(c);
  for (uint32_t c : m.cost) w.put(c);
}
void put_payload(Writer &w, const FrameComplete &m) {
  w.put(m.frameIndex);
  put_stats(w, m.stats);
}
void put_payload(Writer &w, const CameraUpdate &m) { put_camera(w, m.camera); }
void put_payload(Writer &, const Shutdown &) {}

TileResult get_tile(Reader &r) {
  TileResult t;
  t.frameIndex = r.get<uint32_t>();
  t.tileIndex = r.get<uint32_t>();
  t.width = r.get<uint32_t>();
  t.height = r.get<uint32_t>();
  t.sampleCount = r.get<uint32_t>();
  if (t.width > render::kTileSize || t.height > render::kTileSize) throw ProtocolError("tile larger than the tile size");
  const std::size_t n = std::size_t(t.width) * t.height;
  for (auto *buf : {&t.color, &t.albedo, &t.normal}) {
    buf->resize(n);
    for (Rgb &c : *buf) c = r.vec();
  }
  t.cost.resize(n);
  for (uint32_t &c : t.cost) c = r.get<uint32_t>();
  return t;
}

} // namespace

MessageTag tag_of(const Message &m) { return MessageTag(m.index() + 1); }

const char *tag_name(MessageTag tag) {
  switch (tag) {
  case MessageTag::Hello: return "Hello";
  case MessageTag::SetScene: return "SetScene";
  case MessageTag::SetConfig: return "SetConfig";
  case MessageTag::RenderFrame: return "RenderFrame";
  case MessageTag::TileResult: return "TileResult";
  case MessageTag::FrameComplete: return "FrameComplete";
  case MessageTag::CameraUpdate: return "CameraUpdate";
  case MessageTag::Shutdown: return "Shutdown";
  }
  return "?";
}

std::vector<std::byte> encode_message(const Message &m) {
  Writer w;
  w.put(uint32_t(0));
  w.put(uint16_t(tag_of(m)));
  std::visit([&](const auto &msg) { put_payload(w, msg); }, m);
  const uint32_t length = to_le(uint32_t(w.out.size() - 4));
  std::memcpy(w.out.data(), &length, 4);
  return std::move(w.out);
}

Message decode_message(std::span<const std::byte> frame) {
  Reader head(frame);
  const uint32_t length = head.get<uint32_t>();
  if (length != frame.size() - 4) throw ProtocolError("length prefix does not match frame size");
  Reader r(frame.subspan(4));
  const auto tag = MessageTag(r.get<uint16_t>());
  Message m;
  switch (tag) {
  case MessageTag::Hello: m = Hello{r.get<uint32_t>()}; break;
  case MessageTag::SetScene: {
    SetScene s;
    const auto b = r.bytes();
    s.biff.assign(b.begin(), b.end());
    s.path = r.string();
    s.baseDir = r.string();
    s.contentHash = r.get<uint64_t>();
    m = std::move(s);
    break;
  }
  case MessageTag::SetConfig: {
    SetConfig s;
    s.config.maxPathDepth = r.get<uint32_t>();
    s.config.samplesPerFrame = r.get<uint32_t>();
    const uint16_t mode = r.get<uint16_t>();
    if (mode > uint16_t(render::RenderMode::Normal)) throw ProtocolError("unknown render mode");
    s.config.mode = render::RenderMode(mode);
    s.config.deterministic = r.get<uint8_t>() != 0;
    s.config.seed = r.get<uint64_t>();
    s.config.threads = r.get<int32_t>();
    s.config.profile = r.get<uint8_t>() != 0;
    s.width = r.get<uint32_t>();
    s.height = r.get<uint32_t>();
    m = s;
    break;
  }
  case MessageTag::RenderFrame: {
    RenderFrame f;
    f.frameIndex = r.get<uint32_t>();
    f.camera = get_camera(r);
    f.rank = r.get<uint32_t>();
    f.workerCount = r.get<uint32_t>();
    if (f.workerCount == 0 || f.rank >= f.workerCount) throw ProtocolError("bad worker rank");
    m = f;
    break;
  }
  case MessageTag::TileResult: m = get_tile(r); break;
  case MessageTag::FrameComplete: {
    FrameComplete f;
    f.frameIndex = r.get<uint32_t>();
    f.stats = get_stats(r);
    m = f;
    break;
  }
  case MessageTag::CameraUpdate: m = CameraUpdate{get_camera(r)}; break;
  case MessageTag::Shutdown: m = Shutdown{}; break;
  default: throw ProtocolError("unknown message tag " + std::to_string(uint16_t(tag)));
  }
  r.finish();
  return m;
}

TileResult make_tile_result(const render::FrameBuffer &fb, uint32_t frameIndex, uint32_t tile, uint32_t sampleCount) {
  const render::TileRect rect = fb.tile(tile);
  TileResult t;
  t.frameIndex = frameIndex;
  t.tileIndex = tile;
  t.width = rect.width();
  t.height = rect.height();
  t.sampleCount = sampleCount;
  const std::size_t n = rect.pixel_count();
  t.color.reserve(n);
  t.albedo.reserve(n);
  t.normal.reserve(n);
  t.cost.reserve(n);
  for (uint32_t y = rect.y0; y < rect.y1; ++y)
    for (uint32_t x = rect.x0; x < rect.x1; ++x) {
      const std::size_t i = fb.index(x, y);
      t.color.push_back(fb.color[i]);
      t.albedo.push_back(fb.albedo[i]);
      t.normal.push_back(fb.normal[i]);
      t.cost.push_back(fb.cost[i]);
    }
  return t;
}

void accumulate_tile(render::FrameBuffer &fb, const TileResult &r, uint32_t samplesPerFrame) {
  if (r.tileIndex >= fb.tile_count()) throw ProtocolError("tile index out of range");
  const render::TileRect rect = fb.tile(r.tileIndex);
  if (rect.width() != r.width || rect.height() != r.height || r.color.size() != rect.pixel_count() ||
      r.albedo.size() != r.color.size() || r.normal.size() != r.color.size() || r.cost.size() != r.color.size())
    throw ProtocolError("tile result does not match the framebuffer tile");
  std::size_t k = 0;
  for (uint32_t y = rect.y0; y < rect.y1; ++y)
    for (uint32_t x = rect.x0; x < rect.x1; ++x, ++k) {
      const std::size_t i = fb.index(x, y);
      fb.color[i] += r.color[k];
      fb.albedo[i] += r.albedo[k];
      fb.normal[i] += r.normal[k];
      fb.cost[i] += r.cost[k];
      fb.samples[i] += samplesPerFrame;
    }
}

} // namespace elephant::dfb

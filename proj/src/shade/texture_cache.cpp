// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/shade/texture_cache.hpp"

#include "elephant/core/error.hpp"

#include <array>
#include <cmath>
#include <cstring>

#include <fcntl.h>
#include <unistd.h>

namespace elephant::shade {

namespace {

const std::array<float, 256> &srgb_table() {
  static const std::array<float, 256> table = [] {
    std::array<float, 256> t{};
    for (int i = 0; i < 256; ++i) {
      const double c = i / 255.0;
      t[i] = float(c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4));
    }
    return t;
  }();
  return table;
}

Rgb texel(const std::byte *texels, std::size_t index, uint8_t channels, TexelEncoding encoding) {
  float c[3] = {};
  for (int k = 0; k < channels; ++k) {
    if (encoding == TexelEncoding::Srgb8) {
      c[k] = srgb_table()[uint8_t(texels[index * channels + k])];
    } else {
      std::memcpy(&c[k], texels + (index * channels + k) * 4, 4);
    }
  }
  return channels == 1 ? Rgb{c[0]} : Rgb{c[0], c[1], c[2]};
}

uint64_t block_key(uint32_t textureId, uint32_t faceId) { return (uint64_t(textureId) << 32) | faceId; }

} // namespace

bool evict_os_file_cache(const std::filesystem::path &path) {
  const int fd = ::open(path.c_str(), O_RDONLY);
  if (fd < 0) return false;
  ::fdatasync(fd);
  const bool ok = ::posix_fadvise(fd, 0, 0, POSIX_FADV_DONTNEED) == 0;
  ::close(fd);
  return ok;
}

float srgb_to_linear(uint8_t v) { return srgb_table()[v]; }

Rgb sample_face(const std::byte *texels, uint16_t resU, uint16_t resV, uint8_t channels, TexelEncoding encoding,
                float u, float v) {
  const float x = std::clamp(u, 0.f, 1.f) * float(resU) - 0.5f;
  const float y = std::clamp(v, 0.f, 1.f) * float(resV) - 0.5f;
  const float fx0 = std::floor(x), fy0 = std::floor(y);
  const float tx = x - fx0, ty = y - fy0;
  const int x0 = std::clamp(int(fx0), 0, resU - 1), x1 = std::clamp(int(fx0) + 1, 0, resU - 1);
  const int y0 = std::clamp(int(fy0), 0, resV - 1), y1 = std::clamp(int(fy0) + 1, 0, resV - 1);
  auto at = [&](int i, int j) { return texel(texels, std::size_t(j) * resU + i, channels, encoding); };
  const Rgb top = at(x0, y0) * (1.f - tx) + at(x1, y0) * tx;
  const Rgb bottom = at(x0, y1) * (1.f - tx) + at(x1, y1) * tx;
  return top * (1.f - ty) + bottom * ty;
}

FaceTextureCache::FaceTextureCache(std::vector<std::filesystem::path> files, TextureCacheConfig config)
    : files_(std::move(files)), config_(config) {
  if (config_.openHandleCap == 0) config_.openHandleCap = 1;
  headers_.resize(files_.size());
}

std::ifstream &FaceTextureCache::handle_locked(uint32_t textureId) {
  auto it = handles_.find(textureId);
  if (it != handles_.end()) {
    handleLru_.splice(handleLru_.begin(), handleLru_, it->second.lru);
    return it->second.stream;
  }
  while (handles_.size() >= config_.openHandleCap) {
    handles_.erase(handleLru_.back());
    handleLru_.pop_back();
  }
  std::ifstream stream(files_.at(textureId), std::ios::binary);
  if (!stream) throw TextureIoError(files_[textureId].string(), "cannot open");
  handleLru_.push_front(textureId);
  auto &h = handles_[textureId];
  h.stream = std::move(stream);
  h.lru = handleLru_.begin();
  ++handleOpens_;
  peakOpenHandles_ = std::max(peakOpenHandles_, uint32_t(handles_.size()));
  return h.stream;
}

const FaceTextureHeader &FaceTextureCache::header_locked(uint32_t textureId) {
  if (textureId >= headers_.size()) throw TextureIoError("<texture " + std::to_string(textureId) + ">", "unknown texture id");
  if (!headers_[textureId]) {
    std::ifstream &in = handle_locked(textureId);
    in.clear();
    in.seekg(0);
    headers_[textureId] = std::make_unique<FaceTextureHeader>(read_face_texture_header(in, files_[textureId]));
  }
  return *headers_[textureId];
}

std::shared_ptr<const FaceTextureCache::Block> FaceTextureCache::load_locked(uint32_t textureId, uint32_t faceId) {
  const FaceTextureHeader &h = header_locked(textureId);
  const FaceLayout &layout = h.faces[faceId];
  auto block = std::make_shared<Block>();
  block->resU = layout.resU;
  block->resV = layout.resV;
  block->channels = h.channels;
  block->encoding = h.encoding;
  block->texels.resize(h.face_bytes(faceId));
  std::ifstream &in = handle_locked(textureId);
  in.clear();
  in.seekg(std::streamoff(layout.dataOffset));
  if (!in.read(reinterpret_cast<char *>(block->texels.data()), std::streamsize(block->texels.size())))
    throw TextureIoError(files_[textureId].string(), "truncated face data");
  return block;
}

uint32_t FaceTextureCache::face_count(uint32_t textureId) {
  std::lock_guard lock(mutex_);
  return uint32_t(header_locked(textureId).faces.size());
}

FaceTextureHeader FaceTextureCache::header(uint32_t textureId) {
  std::lock_guard lock(mutex_);
  return header_locked(textureId);
}

Rgb FaceTextureCache::sample(uint32_t textureId, uint32_t faceId, float u, float v) {
  std::shared_ptr<const Block> block;
  {
    std::lock_guard lock(mutex_);
    const uint32_t faces = uint32_t(header_locked(textureId).faces.size());
    if (faceId >= faces) throw FaceIdOutOfRange(faceId, faces);
    const uint64_t key = block_key(textureId, faceId);
    auto it = blocks_.find(key);
    if (it != blocks_.end()) {
      ++hits_;
      blockLru_.splice(blockLru_.begin(), blockLru_, it->second.lru);
      block = it->second.block;
    } else {
      ++misses_;
      block = load_locked(textureId, faceId);
      const uint64_t bytes = block->texels.size();
      if (bytes <= config_.byteBudget) {
        while (!blockLru_.empty() && residentBytes_ + bytes > config_.byteBudget) {
          auto victim = blocks_.find(blockLru_.back());
          residentBytes_ -= victim->second.block->texels.size();
          blocks_.erase(victim);
          blockLru_.pop_back();
          ++evictions_;
        }
        blockLru_.push_front(key);
        blocks_[key] = {block, blockLru_.begin()};
        residentBytes_ += bytes;
        peakResidentBytes_ = std::max(peakResidentBytes_, residentBytes_);
      }
    }
  }
  // Readers keep their block alive through the shared pointer, even across eviction.
  return sample_face(block->texels.data(), block->resU, block->resV, block->channels, block->encoding, u, v);
}

TextureCacheCounters FaceTextureCache::counters() const {
  std::lock_guard lock(mutex_);
  TextureCacheCounters c;
  c.hits = hits_;
  c.misses = misses_;
  c.evictions = evictions_;
  c.handleOpens = handleOpens_;
  c.residentBytes = residentBytes_;
  c.openHandles = uint32_t(handles_.size());
  c.peakResidentBytes = peakResidentBytes_;
  c.peakOpenHandles = peakOpenHandles_;
  return c;
}

void FaceTextureCache::clear() {
  std::lock_guard lock(mutex_);
  blocks_.clear();
  blockLru_.clear();
  handles_.clear();
  handleLru_.clear();
  residentBytes_ = 0;
}

} // namespace elephant::shade

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/math.hpp"
#include "elephant/shade/face_texture.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <list>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace elephant::shade {

struct TextureCacheConfig {
  uint64_t byteBudget = std::numeric_limits<uint64_t>::max();
  uint32_t openHandleCap = 100;
};

struct TextureCacheCounters {
  uint64_t hits = 0;
  uint64_t misses = 0;
  uint64_t evictions = 0;
  uint64_t handleOpens = 0;
  uint64_t residentBytes = 0;
  uint32_t openHandles = 0;
  uint64_t peakResidentBytes = 0;
  uint32_t peakOpenHandles = 0;
};

float srgb_to_linear(uint8_t v);

// Asks the OS to drop its cached pages of a file so the next reads go to disk.
// Best effort; false when the request was not honored.
bool evict_os_file_cache(const std::filesystem::path &path);

// Bilinear lookup inside one face; texel centers at (i + 0.5) / res, clamped at the border.
Rgb sample_face(const std::byte *texels, uint16_t resU, uint16_t resV, uint8_t channels, TexelEncoding encoding,
                float u, float v);

// Shared, internally synchronized per-face block cache over a set of texture files.
class FaceTextureCache {
public:
  explicit FaceTextureCache(std::vector<std::filesystem::path> files, TextureCacheConfig config = {});

  std::size_t texture_count() const { return files_.size(); }
  const std::filesystem::path &path(uint32_t textureId) const { return files_.at(textureId); }
  uint32_t face_count(uint32_t textureId);
  FaceTextureHeader header(uint32_t textureId);

  // Throws FaceIdOutOfRange or TextureIoError.
  Rgb sample(uint32_t textureId, uint32_t faceId, float u, float v);

  TextureCacheCounters counters() const;
  const TextureCacheConfig &config() const { return config_; }
  // Drops every resident block and open handle; counters are kept.
  void clear();

private:
  struct Block {
    uint16_t resU, resV;
    uint8_t channels;
    TexelEncoding encoding;
    std::vector<std::byte> texels;
  };
  struct Resident {
    std::shared_ptr<const Block> block;
    std::list<uint64_t>::iterator lru;
  };
  struct Handle {
    std::ifstream stream;
    std::list<uint32_t>::iterator lru;
  };

  const FaceTextureHeader &header_locked(uint32_t textureId);
  std::ifstream &handle_locked(uint32_t textureId);
  std::shared_ptr<const Block> load_locked(uint32_t textureId, uint32_t faceId);

  std::vector<std::filesystem::path> files_;
  TextureCacheConfig config_;

  mutable std::mutex mutex_;
  std::vector<std::unique_ptr<FaceTextureHeader>> headers_;
  std::unordered_map<uint64_t, Resident> blocks_;
  std::list<uint64_t> blockLru_; // front = most recent
  std::unordered_map<uint32_t, Handle> handles_;
  std::list<uint32_t> handleLru_;
  uint64_t residentBytes_ = 0;
  uint64_t peakResidentBytes_ = 0;
  uint32_t peakOpenHandles_ = 0;

  std::atomic<uint64_t> hits_{0}, misses_{0}, evictions_{0}, handleOpens_{0};
};

inline Rgb sample_texture(FaceTextureCache &cache, uint32_t textureId, uint32_t faceId, float u, float v) {
  return cache.sample(textureId, faceId, u, v);
}

} // namespace elephant::shade

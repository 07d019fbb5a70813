// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/shade/texture_cache.hpp"

#include "elephant/core/error.hpp"

#include "face_texture_reference.hpp"
#include "texture_corpus.hpp"
#include "temp_dir.hpp"

#include <doctest.h>

#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

using namespace elephant;
using namespace elephant::shade;
using elephant::testing::random_texture;

namespace {

FaceTextureData::Face float_face(uint16_t ru, uint16_t rv, const std::vector<Rgb> &texels) {
  FaceTextureData::Face f;
  f.resU = ru;
  f.resV = rv;
  f.texels.resize(texels.size() * 12);
  std::memcpy(f.texels.data(), texels.data(), f.texels.size());
  return f;
}

} // namespace

TEST_CASE("single texel face is constant") {
  testing::TempDir dir;
  FaceTextureData t;
  t.encoding = TexelEncoding::Float32;
  t.faces.push_back(float_face(1, 1, {Rgb{0.25f, 0.5f, 2.f}}));
  write_face_texture_file(t, dir / "a.ftex");
  FaceTextureCache cache({dir / "a.ftex"});
  for (float u : {0.f, 0.3f, 1.f})
    for (float v : {0.f, 0.9f, 1.f}) CHECK(cache.sample(0, 0, u, v) == Rgb{0.25f, 0.5f, 2.f});
}

TEST_CASE("bilinear center of a 2x2 face averages the texels") {
  testing::TempDir dir;
  FaceTextureData t;
  t.encoding = TexelEncoding::Float32;
  t.faces.push_back(float_face(2, 2, {Rgb{0.f}, Rgb{1.f}, Rgb{2.f}, Rgb{5.f}}));
  write_face_texture_file(t, dir / "a.ftex");
  FaceTextureCache cache({dir / "a.ftex"});
  CHECK(cache.sample(0, 0, 0.5f, 0.5f).x == doctest::Approx(2.f));
  // Texel centers and clamped borders.
  CHECK(cache.sample(0, 0, 0.25f, 0.25f).x == doctest::Approx(0.f));
  CHECK(cache.sample(0, 0, 0.f, 0.f).x == doctest::Approx(0.f));
  CHECK(cache.sample(0, 0, 1.f, 0.25f).x == doctest::Approx(1.f));
  CHECK(cache.sample(0, 0, 0.75f, 1.f).x == doctest::Approx(5.f));
}

TEST_CASE("srgb texels are linearized before filtering") {
  testing::TempDir dir;
  FaceTextureData t;
  t.channels = 1;
  FaceTextureData::Face f;
  f.resU = 2;
  f.resV = 1;
  f.texels = {std::byte(0), std::byte(255)};
  t.faces.push_back(f);
  write_face_texture_file(t, dir / "g.ftex");
  FaceTextureCache cache({dir / "g.ftex"});
  const Rgb c = cache.sample(0, 0, 0.5f, 0.5f);
  CHECK(c.x == doctest::Approx(0.5f));
  CHECK(c.x == c.y);
  CHECK(c.y == c.z);
  CHECK(srgb_to_linear(188) == doctest::Approx(0.5029f).epsilon(1e-3));
}

TEST_CASE("out of range faces and unreadable files are reported") {
  testing::TempDir dir;
  FaceTextureData t;
  t.encoding = TexelEncoding::Float32;
  t.faces.push_back(float_face(1, 1, {Rgb{1.f}}));
  write_face_texture_file(t, dir / "a.ftex");
  FaceTextureCache cache({dir / "a.ftex", dir / "missing.ftex"});
  CHECK(cache.face_count(0) == 1);
  CHECK_THROWS_AS(cache.sample(0, 1, 0.5f, 0.5f), FaceIdOutOfRange);
  CHECK_THROWS_AS(cache.sample(1, 0, 0.5f, 0.5f), TextureIoError);
  CHECK_THROWS_AS(cache.sample(2, 0, 0.5f, 0.5f), TextureIoError);
}

TEST_CASE("malformed texture headers are rejected") {
  FaceTextureData t;
  t.encoding = TexelEncoding::Float32;
  t.faces.push_back(float_face(2, 2, {Rgb{1.f}, Rgb{1.f}, Rgb{1.f}, Rgb{1.f}}));
  std::ostringstream os;
  write_face_texture(t, os);
  const std::string good = os.str();
  {
    std::istringstream in(good);
    CHECK(read_face_texture_header(in, "x").faces.size() == 1);
  }
  std::string badMagic = good;
  badMagic[0] = 'X';
  std::istringstream a(badMagic);
  CHECK_THROWS_AS(read_face_texture_header(a, "x"), TextureIoError);
  std::string badRes = good;
  badRes[kFaceTextureHeaderSize] = 3; // resU = 3
  std::istringstream b(badRes);
  CHECK_THROWS_AS(read_face_texture_header(b, "x"), TextureIoError);
  std::string badChannels = good;
  badChannels[12] = 2;
  std::istringstream c(badChannels);
  CHECK_THROWS_AS(read_face_texture_header(c, "x"), TextureIoError);
}

TEST_CASE("capped cache matches the uncached reader and an uncapped cache") {
  testing::TempDir dir;
  std::mt19937 rng(41);
  std::vector<std::filesystem::path> files;
  std::vector<uint32_t> faceCounts;
  // 500 faces over 200 files.
  for (int i = 0; i < 200; ++i) {
    const int faces = i < 100 ? 3 : 2;
    const auto path = dir / ("t" + std::to_string(i) + ".ftex");
    write_face_texture_file(random_texture(rng, faces), path);
    files.push_back(path);
    faceCounts.push_back(uint32_t(faces));
  }
  FaceTextureCache capped(files, {64 * 1024, 1});
  FaceTextureCache uncapped(files);
  std::uniform_int_distribution<uint32_t> pickFile(0, 199);
  std::uniform_real_distribution<float> uv(0.f, 1.f);
  int mismatches = 0, referenceMismatches = 0;
  for (int i = 0; i < 100000; ++i) {
    const uint32_t tex = pickFile(rng);
    const uint32_t face = std::uniform_int_distribution<uint32_t>(0, faceCounts[tex] - 1)(rng);
    const float u = uv(rng), v = uv(rng);
    const Rgb a = capped.sample(tex, face, u, v);
    if (!(a == uncapped.sample(tex, face, u, v))) ++mismatches;
    if (i % 50 == 0 && !(a == testing::reference_face_lookup(files[tex], face, u, v))) ++referenceMismatches;
    if (i % 997 == 0) {
      const auto c = capped.counters();
      CHECK(c.residentBytes <= 64 * 1024);
      CHECK(c.openHandles <= 1);
    }
  }
  CHECK(mismatches == 0);
  CHECK(referenceMismatches == 0);
  const auto c = capped.counters();
  CHECK(c.peakResidentBytes <= 64 * 1024);
  CHECK(c.peakOpenHandles == 1);
  CHECK(c.evictions > 0);
  CHECK(c.hits + c.misses == 100000);
  CHECK(uncapped.counters().evictions == 0);
}

TEST_CASE("blocks larger than the budget are served without being retained") {
  testing::TempDir dir;
  FaceTextureData t;
  t.encoding = TexelEncoding::Float32;
  t.faces.push_back(float_face(2, 2, {Rgb{1.f}, Rgb{2.f}, Rgb{3.f}, Rgb{4.f}}));
  write_face_texture_file(t, dir / "a.ftex");
  FaceTextureCache cache({dir / "a.ftex"}, {16, 4});
  CHECK(cache.sample(0, 0, 0.5f, 0.5f).x == doctest::Approx(2.5f));
  CHECK(cache.counters().residentBytes == 0);
  CHECK(cache.sample(0, 0, 0.5f, 0.5f).x == doctest::Approx(2.5f));
  CHECK(cache.counters().misses == 2);
}

TEST_CASE("concurrent lookups with eviction stay exact") {
  testing::TempDir dir;
  std::mt19937 rng(43);
  std::vector<std::filesystem::path> files;
  for (int i = 0; i < 20; ++i) {
    files.push_back(dir / ("t" + std::to_string(i) + ".ftex"));
    write_face_texture_file(random_texture(rng, 4), files.back());
  }
  FaceTextureCache shared(files, {8 * 1024, 2});
  std::atomic<int> mismatches{0};
  std::vector<std::thread> threads;
  for (int th = 0; th < 4; ++th) {
    threads.emplace_back([&, th] {
      std::mt19937 local(uint32_t(100 + th));
      std::uniform_real_distribution<float> uv(0.f, 1.f);
      for (int i = 0; i < 2000; ++i) {
        const uint32_t tex = local() % 20, face = local() % 4;
        const float u = uv(local), v = uv(local);
        if (!(shared.sample(tex, face, u, v) == testing::reference_face_lookup(files[tex], face, u, v)))
          ++mismatches;
      }
    });
  }
  for (auto &t : threads) t.join();
  CHECK(mismatches == 0);
  CHECK(shared.counters().peakOpenHandles <= 2);
}

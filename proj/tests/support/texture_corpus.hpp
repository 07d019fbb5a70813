// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/shade/face_texture.hpp"

#include <cstring>
#include <random>

namespace elephant::testing {

// Random resolutions (1 to 32 per side), encoding and channel count.
inline shade::FaceTextureData random_texture(std::mt19937 &rng, int faces) {
  shade::FaceTextureData t;
  std::uniform_int_distribution<int> logRes(0, 5), byte(0, 255), enc(0, 1), ch(0, 3);
  t.encoding = enc(rng) ? shade::TexelEncoding::Float32 : shade::TexelEncoding::Srgb8;
  t.channels = ch(rng) == 0 ? 1 : 3;
  std::uniform_real_distribution<float> val(0.f, 4.f);
  for (int f = 0; f < faces; ++f) {
    shade::FaceTextureData::Face face;
    face.resU = uint16_t(1 << logRes(rng));
    face.resV = uint16_t(1 << logRes(rng));
    const std::size_t n = std::size_t(face.resU) * face.resV * t.channels;
    if (t.encoding == shade::TexelEncoding::Srgb8) {
      for (std::size_t i = 0; i < n; ++i) face.texels.push_back(std::byte(byte(rng)));
    } else {
      face.texels.resize(n * 4);
      for (std::size_t i = 0; i < n; ++i) {
        const float v = val(rng);
        std::memcpy(&face.texels[i * 4], &v, 4);
      }
    }
    t.faces.push_back(std::move(face));
  }
  return t;
}

} // namespace elephant::testing

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/math.hpp"
#include "elephant/ingest/scene_desc.hpp"

#include <cmath>

namespace elephant::render {

using CameraState = ingest::CameraDesc;

// Pinhole camera; the aspect ratio follows the image, not CameraDesc::aspect.
class PinholeCamera {
public:
  PinholeCamera(const CameraState &c, uint32_t width, uint32_t height)
      : origin_(c.position), width_(float(width)), height_(float(height)) {
    const Vec3f forward = normalize(c.lookAt - c.position);
    Vec3f right = cross(forward, c.up);
    if (length(right) < 1e-8f) right = cross(forward, std::abs(forward.y) < 0.9f ? Vec3f{0, 1, 0} : Vec3f{1, 0, 0});
    right = normalize(right);
    const Vec3f up = cross(right, forward);
    const float tanHalf = std::tan(0.5f * c.fovY * kPi / 180.f);
    forward_ = forward;
    right_ = right * (tanHalf * width_ / height_);
    up_ = up * tanHalf;
  }

  // Film position in pixels, (0,0) at the top-left corner.
  Ray generate(float px, float py) const {
    const float sx = 2.f * px / width_ - 1.f;
    const float sy = 1.f - 2.f * py / height_;
    return {origin_, normalize(forward_ + right_ * sx + up_ * sy)};
  }

private:
  Vec3f origin_, forward_, right_, up_;
  float width_, height_;
};

} // namespace elephant::render

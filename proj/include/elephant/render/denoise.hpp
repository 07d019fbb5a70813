// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/image.hpp"

#include <cstdint>

namespace elephant::render {

struct DenoiseParams {
  int iterations = 5;
  float sigmaAlbedo = 0.25f;
  float sigmaNormal = 0.3f;
  float sigmaColor = 1.0f; // at one sample per pixel; divided by sqrt(sampleCount)
};

// Edge-avoiding a-trous wavelet filter guided by albedo and normal. Pixels whose
// 9x9 neighborhood is constant in color, albedo and normal pass through unchanged.
// Throws DimensionMismatch when the images differ in size.
ImageRgb denoise(const ImageRgb &color, const ImageRgb &albedo, const ImageRgb &normal, uint32_t sampleCount,
                 const DenoiseParams &params = {});

} // namespace elephant::render

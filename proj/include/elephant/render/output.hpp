// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/image.hpp"

#include "elephant/render/integrator.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace elephant::render {

// Exposure, Reinhard x/(1+x), sRGB encode, clamp, round.
uint8_t tonemap_channel(float linear, float exposure = 1.f);

// 8-bit sRGB, 3 bytes per pixel, rows top to bottom.
std::vector<uint8_t> tonemap_for_display(const ImageRgb &image, float exposure = 1.f);
// Clamps to [0,1] and rounds; for images that already hold display colors.
std::vector<uint8_t> quantize_for_display(const ImageRgb &image);
// Radiance is tonemapped; debug and heat modes are shown as they are.
std::vector<uint8_t> display_rgb8(const ImageRgb &image, RenderMode mode, float exposure = 1.f);

std::vector<uint8_t> encode_png(const std::vector<uint8_t> &rgb, uint32_t width, uint32_t height);
void write_png(const std::filesystem::path &path, const std::vector<uint8_t> &rgb, uint32_t width, uint32_t height);
// Decodes an 8-bit RGB PNG; used to verify output.
std::vector<uint8_t> decode_png(const std::vector<uint8_t> &png, uint32_t &width, uint32_t &height);

} // namespace elephant::render

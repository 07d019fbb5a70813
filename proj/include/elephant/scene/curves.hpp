// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/scene/geometry.hpp"

#include <optional>
#include <span>

namespace elephant::scene {

inline constexpr uint32_t kDefaultSegmentsPerSpan = 8;

Vec3f bezier_point(std::span<const Vec3f, 4> cp, float t);
Vec3f bezier_tangent(std::span<const Vec3f, 4> cp, float t);

// Converts each cubic span into segmentsPerSpan ribbon quads whose centerline
// passes through the curve at t = k/segmentsPerSpan. Flat ribbons face the
// camera position when given (else +Z); Round curves become two crossed
// ribbons. Ribbon width interpolates the control-point widths linearly.
QuadMesh tessellate_curves(const CurveSet &curves, uint32_t segmentsPerSpan,
                           std::optional<Vec3f> cameraPosition = std::nullopt);

} // namespace elephant::scene

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>

namespace elephant::shade {

inline constexpr int kAlbedoTableSize = 128;

// Grid abscissae. cos(theta) is floored to keep the grazing column finite.
inline double albedo_table_mu(int i) { return std::max(double(i) / (kAlbedoTableSize - 1), 1e-3); }
inline double albedo_table_roughness(int j) { return double(j) / (kAlbedoTableSize - 1); }

// Directional albedo of GGX reflection with unit Fresnel (e1) and with the
// Schlick weight (1 - wo.h)^5 as Fresnel (es), bilinear in (cos(theta), roughness).
struct GgxAlbedo {
  double e1;
  double es;
};
GgxAlbedo ggx_albedo(double mu, double roughness);

// Cosine-weighted hemispherical averages 2 * integral(E(mu) mu dmu) of the
// interpolated tables at the given roughness.
GgxAlbedo ggx_albedo_average(double roughness);

// Integral of (1 - wi.h)^5 cos(theta_i) over the hemisphere.
double sheen_albedo(double mu);
double sheen_albedo_average();

} // namespace elephant::shade

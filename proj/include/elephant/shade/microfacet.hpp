// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>

namespace elephant::shade {

// Double-precision vector for BSDF internals.
struct Vec3d {
  double x = 0, y = 0, z = 0;
};

inline Vec3d operator+(const Vec3d &a, const Vec3d &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3d operator-(const Vec3d &a, const Vec3d &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3d operator*(const Vec3d &a, double s) { return {a.x * s, a.y * s, a.z * s}; }
inline double dot(const Vec3d &a, const Vec3d &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3d cross(const Vec3d &a, const Vec3d &b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Vec3d normalize(const Vec3d &a) { return a * (1.0 / std::sqrt(dot(a, a))); }

inline constexpr double kPiD = 3.14159265358979323846;

// Isotropic GGX / Trowbridge-Reitz with height-correlated Smith masking.
struct Ggx {
  double alpha;

  double D(const Vec3d &h) const {
    if (h.z <= 0) return 0;
    const double a2 = alpha * alpha;
    const double t = h.z * h.z * (a2 - 1) + 1;
    return a2 / (kPiD * t * t);
  }
  double lambda(const Vec3d &w) const {
    const double z2 = w.z * w.z;
    if (z2 <= 0) return 1e300;
    const double tan2 = std::max(0.0, 1 - z2) / z2;
    return 0.5 * (std::sqrt(1 + alpha * alpha * tan2) - 1);
  }
  double G1(const Vec3d &w) const { return 1 / (1 + lambda(w)); }
  double G2(const Vec3d &wo, const Vec3d &wi) const { return 1 / (1 + lambda(wo) + lambda(wi)); }

  // Visible-normal sampling (Heitz 2018); wo.z > 0.
  Vec3d sample_visible(const Vec3d &wo, double u1, double u2) const {
    const Vec3d vh = normalize({alpha * wo.x, alpha * wo.y, wo.z});
    const double len2 = vh.x * vh.x + vh.y * vh.y;
    const Vec3d t1 = len2 > 0 ? Vec3d{-vh.y, vh.x, 0} * (1 / std::sqrt(len2)) : Vec3d{1, 0, 0};
    const Vec3d t2 = cross(vh, t1);
    const double r = std::sqrt(u1);
    const double phi = 2 * kPiD * u2;
    const double p1 = r * std::cos(phi);
    double p2 = r * std::sin(phi);
    const double s = 0.5 * (1 + vh.z);
    p2 = (1 - s) * std::sqrt(std::max(0.0, 1 - p1 * p1)) + s * p2;
    const double p3 = std::sqrt(std::max(0.0, 1 - p1 * p1 - p2 * p2));
    const Vec3d nh = t1 * p1 + t2 * p2 + vh * p3;
    return normalize({alpha * nh.x, alpha * nh.y, std::max(1e-12, nh.z)});
  }

  // Density of the reflected direction wi under visible-normal sampling from wo.
  double reflect_pdf(const Vec3d &wo, const Vec3d &wi) const {
    const Vec3d hs = wo + wi;
    const double len2 = dot(hs, hs);
    if (len2 <= 0) return 0;
    const Vec3d h = hs * (1 / std::sqrt(len2));
    if (h.z <= 0) return 0;
    return G1(wo) * D(h) / (4 * wo.z);
  }
};

inline Vec3d reflect(const Vec3d &w, const Vec3d &h) { return h * (2 * dot(w, h)) - w; }

inline double schlick_weight(double c) {
  const double m = std::clamp(1 - c, 0.0, 1.0);
  const double m2 = m * m;
  return m2 * m2 * m;
}

// Roughness parameter to GGX alpha.
inline double roughness_to_alpha(double r) { return std::max(r, 1e-3) * std::max(r, 1e-3); }

} // namespace elephant::shade

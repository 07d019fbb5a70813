// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace elephant {

inline constexpr float kPi = 3.14159265358979323846f;
inline constexpr float kInvPi = 0.31830988618379067154f;
inline constexpr float kInfinity = std::numeric_limits<float>::infinity();

struct Vec3f {
  float x = 0.f, y = 0.f, z = 0.f;

  constexpr Vec3f() = default;
  constexpr Vec3f(float x_, float y_, float z_) : x(x_), y(y_), z(z_) {}
  constexpr explicit Vec3f(float s) : x(s), y(s), z(s) {}

  constexpr float operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr float &operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3f operator-() const { return {-x, -y, -z}; }
  constexpr Vec3f &operator+=(const Vec3f &o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3f &operator-=(const Vec3f &o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr Vec3f &operator*=(float s) { x *= s; y *= s; z *= s; return *this; }
  constexpr Vec3f &operator*=(const Vec3f &o) { x *= o.x; y *= o.y; z *= o.z; return *this; }

  friend constexpr bool operator==(const Vec3f &, const Vec3f &) = default;
};

constexpr Vec3f operator+(Vec3f a, const Vec3f &b) { return a += b; }
constexpr Vec3f operator-(Vec3f a, const Vec3f &b) { return a -= b; }
constexpr Vec3f operator*(Vec3f a, const Vec3f &b) { return a *= b; }
constexpr Vec3f operator*(Vec3f a, float s) { return a *= s; }
constexpr Vec3f operator*(float s, Vec3f a) { return a *= s; }
constexpr Vec3f operator/(const Vec3f &a, float s) { return {a.x / s, a.y / s, a.z / s}; }
constexpr Vec3f operator/(const Vec3f &a, const Vec3f &b) { return {a.x / b.x, a.y / b.y, a.z / b.z}; }

constexpr float dot(const Vec3f &a, const Vec3f &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3f cross(const Vec3f &a, const Vec3f &b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline float length(const Vec3f &a) { return std::sqrt(dot(a, a)); }
inline Vec3f normalize(const Vec3f &a) { return a / length(a); }
constexpr Vec3f min(const Vec3f &a, const Vec3f &b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
}
constexpr Vec3f max(const Vec3f &a, const Vec3f &b) {
  return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
}
constexpr float max_component(const Vec3f &a) { return std::max(a.x, std::max(a.y, a.z)); }
inline bool is_finite(const Vec3f &a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}
constexpr Vec3f lerp(const Vec3f &a, const Vec3f &b, float t) { return a * (1.f - t) + b * t; }

// Linear RGB shares the vector representation.
using Rgb = Vec3f;

constexpr float luminance(const Rgb &c) { return 0.2126f * c.x + 0.7152f * c.y + 0.0722f * c.z; }

// Orthonormal basis around a unit normal (Duff et al. branchless construction).
struct Frame {
  Vec3f s, t, n;

  static Frame from_normal(const Vec3f &n) {
    const float sign = std::copysign(1.f, n.z);
    const float a = -1.f / (sign + n.z);
    const float b = n.x * n.y * a;
    return {{1.f + sign * n.x * n.x * a, sign * b, -sign * n.x}, {b, sign + n.y * n.y * a, -n.y}, n};
  }
  Vec3f to_local(const Vec3f &v) const { return {dot(v, s), dot(v, t), dot(v, n)}; }
  Vec3f to_world(const Vec3f &v) const { return s * v.x + t * v.y + n * v.z; }
};

struct Aabb {
  Vec3f lower{kInfinity};
  Vec3f upper{-kInfinity};

  bool empty() const { return lower.x > upper.x || lower.y > upper.y || lower.z > upper.z; }
  void extend(const Vec3f &p) { lower = min(lower, p); upper = max(upper, p); }
  void extend(const Aabb &b) { lower = min(lower, b.lower); upper = max(upper, b.upper); }
  Vec3f center() const { return (lower + upper) * 0.5f; }
  Vec3f extent() const { return upper - lower; }
  float half_area() const {
    if (empty()) return 0.f;
    const Vec3f e = extent();
    return e.x * e.y + e.y * e.z + e.z * e.x;
  }
  bool contains(const Aabb &b) const {
    return b.lower.x >= lower.x && b.lower.y >= lower.y && b.lower.z >= lower.z &&
           b.upper.x <= upper.x && b.upper.y <= upper.y && b.upper.z <= upper.z;
  }
  friend bool operator==(const Aabb &, const Aabb &) = default;
};

// Row-major 3x4 affine transform: p' = L p + t with rows (L | t).
struct Affine3 {
  std::array<float, 12> m{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0};

  static Affine3 identity() { return {}; }
  static Affine3 translate(const Vec3f &t) {
    return {{1, 0, 0, t.x, 0, 1, 0, t.y, 0, 0, 1, t.z}};
  }
  static Affine3 scale(const Vec3f &s) { return {{s.x, 0, 0, 0, 0, s.y, 0, 0, 0, 0, s.z, 0}}; }
  static Affine3 rotate(float degrees, const Vec3f &axis);

  float operator()(int r, int c) const { return m[r * 4 + c]; }
  float &operator()(int r, int c) { return m[r * 4 + c]; }

  Vec3f point(const Vec3f &p) const {
    return {m[0] * p.x + m[1] * p.y + m[2] * p.z + m[3], m[4] * p.x + m[5] * p.y + m[6] * p.z + m[7],
            m[8] * p.x + m[9] * p.y + m[10] * p.z + m[11]};
  }
  Vec3f vector(const Vec3f &v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[4] * v.x + m[5] * v.y + m[6] * v.z,
            m[8] * v.x + m[9] * v.y + m[10] * v.z};
  }
  // Multiplies by the transpose of the linear part; with an inverse this maps normals.
  Vec3f transpose_vector(const Vec3f &v) const {
    return {m[0] * v.x + m[4] * v.y + m[8] * v.z, m[1] * v.x + m[5] * v.y + m[9] * v.z,
            m[2] * v.x + m[6] * v.y + m[10] * v.z};
  }

  double determinant() const;
  Affine3 inverse() const;
  Aabb transform(const Aabb &b) const;

  friend Affine3 operator*(const Affine3 &a, const Affine3 &b);
  friend bool operator==(const Affine3 &, const Affine3 &) = default;
};

struct Ray {
  Vec3f origin;
  Vec3f direction;
  float tmin = 0.f;
  float tmax = kInfinity;
};

// Robust offset of a ray origin along the geometric normal.
inline Vec3f offset_origin(const Vec3f &p, const Vec3f &ng, const Vec3f &dir) {
  const float scale = 1e-4f * std::max(1.f, max_component(max(p, -p)));
  return dot(dir, ng) >= 0.f ? p + ng * scale : p - ng * scale;
}

} // namespace elephant

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/core/math.hpp"

namespace elephant {

Affine3 Affine3::rotate(float degrees, const Vec3f &axis) {
  const Vec3f a = normalize(axis);
  const double theta = double(degrees) * 3.14159265358979323846 / 180.0;
  const float s = float(std::sin(theta));
  const float c = float(std::cos(theta));
  Affine3 r;
  r(0, 0) = a.x * a.x + (1 - a.x * a.x) * c;
  r(0, 1) = a.x * a.y * (1 - c) - a.z * s;
  r(0, 2) = a.x * a.z * (1 - c) + a.y * s;
  r(1, 0) = a.x * a.y * (1 - c) + a.z * s;
  r(1, 1) = a.y * a.y + (1 - a.y * a.y) * c;
  r(1, 2) = a.y * a.z * (1 - c) - a.x * s;
  r(2, 0) = a.x * a.z * (1 - c) - a.y * s;
  r(2, 1) = a.y * a.z * (1 - c) + a.x * s;
  r(2, 2) = a.z * a.z + (1 - a.z * a.z) * c;
  return r;
}

double Affine3::determinant() const {
  const auto &a = m;
  return double(a[0]) * (double(a[5]) * a[10] - double(a[6]) * a[9]) -
         double(a[1]) * (double(a[4]) * a[10] - double(a[6]) * a[8]) +
         double(a[2]) * (double(a[4]) * a[9] - double(a[5]) * a[8]);
}

Affine3 Affine3::inverse() const {
  const auto &a = m;
  const double det = determinant();
  const double inv = 1.0 / det;
  double l[9];
  l[0] = (double(a[5]) * a[10] - double(a[6]) * a[9]) * inv;
  l[1] = (double(a[2]) * a[9] - double(a[1]) * a[10]) * inv;
  l[2] = (double(a[1]) * a[6] - double(a[2]) * a[5]) * inv;
  l[3] = (double(a[6]) * a[8] - double(a[4]) * a[10]) * inv;
  l[4] = (double(a[0]) * a[10] - double(a[2]) * a[8]) * inv;
  l[5] = (double(a[2]) * a[4] - double(a[0]) * a[6]) * inv;
  l[6] = (double(a[4]) * a[9] - double(a[5]) * a[8]) * inv;
  l[7] = (double(a[1]) * a[8] - double(a[0]) * a[9]) * inv;
  l[8] = (double(a[0]) * a[5] - double(a[1]) * a[4]) * inv;
  Affine3 r;
  for (int row = 0; row < 3; ++row) {
    double t = 0;
    for (int k = 0; k < 3; ++k) {
      r.m[row * 4 + k] = float(l[row * 3 + k]);
      t -= l[row * 3 + k] * a[k * 4 + 3];
    }
    r.m[row * 4 + 3] = float(t);
  }
  return r;
}

Aabb Affine3::transform(const Aabb &b) const {
  Aabb out;
  if (b.empty()) return out;
  for (int i = 0; i < 8; ++i) {
    const Vec3f corner{(i & 1) ? b.upper.x : b.lower.x, (i & 2) ? b.upper.y : b.lower.y,
                       (i & 4) ? b.upper.z : b.lower.z};
    out.extend(point(corner));
  }
  // Conservative widening against rounding in the corner transform.
  const Vec3f e = out.extent();
  const float pad = 1e-6f * std::max(max_component(e), max_component(max(out.lower, -out.lower)));
  out.lower -= Vec3f(pad);
  out.upper += Vec3f(pad);
  return out;
}

Affine3 operator*(const Affine3 &a, const Affine3 &b) {
  Affine3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) {
      double s = j == 3 ? a(i, 3) : 0.0;
      for (int k = 0; k < 3; ++k) s += double(a(i, k)) * b(k, j);
      r(i, j) = float(s);
    }
  }
  return r;
}

} // namespace elephant

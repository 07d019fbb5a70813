// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/shade/lights.hpp"

#include "elephant/accel/primitives.hpp"

#include <cmath>

namespace elephant::shade {

QuadLight make_quad_light(const std::array<Vec3f, 4> &c, const Rgb &radiance) {
  QuadLight q;
  q.corners = c;
  q.radiance = radiance;
  const Vec3f n = cross(c[1] - c[0], c[3] - c[0]);
  q.normal = length(n) > 0.f ? normalize(n) : Vec3f{0.f, 0.f, 1.f};
  q.firstTriangleArea = 0.5f * length(cross(c[1] - c[0], c[2] - c[0]));
  q.area = q.firstTriangleArea + 0.5f * length(cross(c[2] - c[0], c[3] - c[0]));
  return q;
}

Light make_light(const ingest::LightDesc &desc, const std::filesystem::path &baseDir) {
  Light l;
  l.kind = desc.kind;
  if (desc.kind == ingest::LightKind::QuadArea) {
    l.quad = make_quad_light(desc.corners, desc.radiance);
  } else {
    l.environment.radiance = desc.radiance;
    l.environment.scale = desc.scale;
    if (!desc.imagePath.empty()) {
      std::filesystem::path p = desc.imagePath;
      if (p.is_relative() && !baseDir.empty()) p = baseDir / p;
      l.environment.image = read_pfm(p);
    }
  }
  return l;
}

std::array<float, 2> direction_to_latlong(const Vec3f &d) {
  const float u = 0.5f + std::atan2(d.x, -d.z) / (2.f * kPi);
  const float v = std::acos(std::clamp(d.y, -1.f, 1.f)) / kPi;
  return {u, v};
}

Rgb eval_environment(const EnvironmentLight &env, const Vec3f &direction) {
  if (env.image.pixels.empty()) return env.radiance * env.scale;
  const auto [u, v] = direction_to_latlong(direction);
  const int w = int(env.image.width), h = int(env.image.height);
  const float x = u * float(w) - 0.5f;
  const float y = v * float(h) - 0.5f;
  const float fx = std::floor(x), fy = std::floor(y);
  const float tx = x - fx, ty = y - fy;
  auto wrap = [w](int i) { return ((i % w) + w) % w; };
  const int x0 = wrap(int(fx)), x1 = wrap(int(fx) + 1);
  const int y0 = std::clamp(int(fy), 0, h - 1), y1 = std::clamp(int(fy) + 1, 0, h - 1);
  const Rgb top = env.image.at(x0, y0) * (1.f - tx) + env.image.at(x1, y0) * tx;
  const Rgb bottom = env.image.at(x0, y1) * (1.f - tx) + env.image.at(x1, y1) * tx;
  return (top * (1.f - ty) + bottom * ty) * env.scale;
}

float quad_light_pdf(const QuadLight &light, const Vec3f &wi, float dist) {
  const float cosLight = std::abs(dot(wi, light.normal));
  if (cosLight <= 0.f || light.area <= 0.f) return 0.f;
  return dist * dist / (light.area * cosLight);
}

LightSample sample_light(const Light &light, const Vec3f &p, float u1, float u2) {
  LightSample s;
  if (light.kind == ingest::LightKind::Environment) {
    const float z = 1.f - 2.f * u1;
    const float r = std::sqrt(std::max(0.f, 1.f - z * z));
    const float phi = 2.f * kPi * u2;
    s.wi = {r * std::cos(phi), r * std::sin(phi), z};
    s.radiance = eval_environment(light.environment, s.wi);
    s.pdf = kUniformSpherePdf;
    return s;
  }
  const QuadLight &q = light.quad;
  if (q.area <= 0.f) return s;
  const float split = q.firstTriangleArea / q.area;
  Vec3f a = q.corners[0], b = q.corners[1], c = q.corners[2];
  if (u1 < split) {
    u1 = u1 / split;
  } else {
    u1 = std::min((u1 - split) / (1.f - split), 1.f);
    b = q.corners[2];
    c = q.corners[3];
  }
  const float su = std::sqrt(u1);
  const Vec3f x = a * (1.f - su) + b * (su * (1.f - u2)) + c * (su * u2);
  const Vec3f toLight = x - p;
  const float dist = length(toLight);
  if (dist <= 0.f) return s;
  s.wi = toLight / dist;
  s.distance = dist;
  s.pdf = quad_light_pdf(q, s.wi, dist);
  s.radiance = dot(-s.wi, q.normal) > 0.f ? q.radiance : Rgb{0.f};
  return s;
}

std::optional<QuadLightHit> intersect_quad_light(const QuadLight &light, const Ray &ray) {
  accel::PrimitiveHit h{};
  const auto &c = light.corners;
  if (!accel::intersect_quad(ray.origin, ray.direction, c[0], c[1], c[2], c[3], ray.tmin, ray.tmax, h))
    return std::nullopt;
  const float len = length(ray.direction);
  const Vec3f wi = ray.direction / len;
  QuadLightHit hit;
  hit.t = h.t;
  hit.radiance = dot(-wi, light.normal) > 0.f ? light.radiance : Rgb{0.f};
  hit.pdf = quad_light_pdf(light, wi, h.t * len);
  return hit;
}

} // namespace elephant::shade

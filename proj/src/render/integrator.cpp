// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/render/integrator.hpp"

#include "elephant/core/error.hpp"
#include "elephant/core/hash.hpp"
#include "elephant/shade/bsdf.hpp"

#include <string>

namespace elephant::render {

namespace {

float power_heuristic(float a, float b) {
  const float a2 = a * a, b2 = b * b;
  return a2 + b2 > 0.f ? a2 / (a2 + b2) : 0.f;
}

bool is_black(const Rgb &c) { return c.x <= 0.f && c.y <= 0.f && c.z <= 0.f; }

struct LightHit {
  float t = kInfinity;
  uint32_t light = 0;
  shade::QuadLightHit hit{};
};

// Nearest quad light along the ray, closer than tmax.
std::optional<LightHit> nearest_quad_light(const World &world, const Ray &ray, float tmax) {
  std::optional<LightHit> best;
  const auto &lights = world.lights();
  for (uint32_t i = 0; i < lights.size(); ++i) {
    if (lights[i].kind != ingest::LightKind::QuadArea) continue;
    Ray r = ray;
    r.tmax = best ? best->t : tmax;
    if (const auto h = shade::intersect_quad_light(lights[i].quad, r); h && h->t < r.tmax) best = LightHit{h->t, i, *h};
  }
  return best;
}

} // namespace

const char *mode_name(RenderMode m) {
  switch (m) {
  case RenderMode::PathTrace: return "pathtrace";
  case RenderMode::PrimId: return "primid";
  case RenderMode::GeomId: return "geomid";
  case RenderMode::InstanceId: return "instanceid";
  case RenderMode::CostHeat: return "costheat";
  case RenderMode::Albedo: return "albedo";
  case RenderMode::Normal: return "normal";
  }
  return "?";
}

RenderMode parse_mode(std::string_view name) {
  for (int m = 0; m <= int(RenderMode::Normal); ++m)
    if (name == mode_name(RenderMode(m))) return RenderMode(m);
  throw Error("unknown render mode '" + std::string(name) + "'");
}

Rgb id_color(uint64_t id) {
  const uint64_t h = mix64(id * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull);
  auto channel = [&](int shift) { return 0.1f + 0.9f * float((h >> shift) & 0xffu) / 255.f; };
  return {channel(8), channel(24), channel(40)};
}

Rgb debug_shade(const World &world, const std::optional<accel::Hit> &hit, RenderMode mode) {
  if (!hit) return Rgb{kBackgroundGray};
  switch (mode) {
  case RenderMode::PrimId: return id_color(hit->primId);
  case RenderMode::GeomId:
    return id_color(world.geometry_index(world.accel().instances()[hit->instanceId].objectRef, hit->geomId));
  case RenderMode::InstanceId: return id_color(hit->instanceId);
  default: return Rgb{kBackgroundGray};
  }
}

Rgb heat_color(float t) {
  t = std::clamp(t, 0.f, 1.f);
  static constexpr std::array<Rgb, 5> ramp{Rgb{0.0f, 0.0f, 0.02f}, Rgb{0.25f, 0.02f, 0.4f}, Rgb{0.75f, 0.15f, 0.3f},
                                           Rgb{0.98f, 0.55f, 0.05f}, Rgb{1.0f, 1.0f, 0.85f}};
  const float x = t * float(ramp.size() - 1);
  const std::size_t i = std::min<std::size_t>(std::size_t(x), ramp.size() - 2);
  return lerp(ramp[i], ramp[i + 1], x - float(i));
}

SurfacePoint surface_point(const World &world, const Ray &ray, const accel::Hit &hit, ThreadProfiler *profiler) {
  SurfacePoint sp;
  const accel::TwoLevelAccel &acc = world.accel();
  const uint32_t objectId = acc.instances()[hit.instanceId].objectRef;
  const accel::AccelGeometry &g = acc.geometry(hit.instanceId, hit.geomId);
  const ShapeBinding &b = world.binding(objectId, hit.geomId);
  float fu = hit.u, fv = hit.v;
  uint32_t face = hit.primId;
  {
    ScopedCategory scope(profiler, Category::PostIntersect);
    sp.p = ray.origin + ray.direction * hit.t;
    sp.ng = hit.ng;
    sp.ns = hit.ng;
    if (g.kind == accel::GeometryKind::Triangles && !g.normals.empty()) {
      const uint32_t *idx = &g.indices[std::size_t(hit.primId) * 3];
      const Vec3f n = g.normals[idx[0]] * (1.f - hit.u - hit.v) + g.normals[idx[1]] * hit.u + g.normals[idx[2]] * hit.v;
      if (dot(n, n) > 0.f) {
        sp.ns = accel::world_normal(acc.inverse(hit.instanceId), n);
        if (dot(sp.ns, sp.ng) < 0.f) sp.ns = -sp.ns;
      }
    }
    sp.frontFace = dot(ray.direction, sp.ng) < 0.f;
    if (!sp.frontFace) {
      sp.ng = -sp.ng;
      sp.ns = -sp.ns;
    }
    if (b.pairedFaces) {
      accel::triangle_to_quad_uv(hit.primId, hit.u, hit.v, fu, fv);
      face = hit.primId / 2;
    }
  }
  sp.material = &world.material(b.material);
  sp.baseColor = sp.material->baseColor;
  if (b.texture >= 0) {
    ScopedCategory scope(profiler, Category::Texture);
    sp.baseColor = sp.baseColor * world.textures()->sample(uint32_t(b.texture), face, fu, fv);
  }
  return sp;
}

PathResult trace_path(const World &world, Sampler &sampler, const Ray &primary, uint32_t maxDepth, PathContext &ctx) {
  PathResult out;
  const auto &lights = world.lights();
  const float pickPdf = lights.empty() ? 0.f : 1.f / float(lights.size());
  ThreadProfiler *prof = ctx.profiler;

  Ray ray = primary;
  Rgb beta{1.f};
  Rgb L{0.f};
  float prevPdf = 0.f;
  bool prevDelta = true; // camera rays count as specular for emission
  for (uint32_t depth = 0;; ++depth) {
    std::optional<accel::Hit> hit;
    {
      ScopedCategory scope(prof, Category::TraversalIntersect);
      hit = world.accel().intersect(ray, ctx.traversal);
      ++out.rays;
    }
    // Emission: quad lights in front of the surface, or the environment on a miss.
    {
      ScopedCategory scope(prof, Category::SampleShade);
      if (const auto lh = nearest_quad_light(world, ray, hit ? hit->t : ray.tmax)) {
        if (!is_black(lh->hit.radiance)) {
          const float w = prevDelta ? 1.f : power_heuristic(prevPdf, pickPdf * lh->hit.pdf);
          L += beta * lh->hit.radiance * w;
        }
        break;
      }
      if (!hit) {
        for (const auto &light : lights) {
          if (light.kind != ingest::LightKind::Environment) continue;
          const float w = prevDelta ? 1.f : power_heuristic(prevPdf, pickPdf * shade::kUniformSpherePdf);
          L += beta * shade::eval_environment(light.environment, ray.direction) * w;
        }
        break;
      }
    }
    if (depth >= maxDepth) break;

    const SurfacePoint sp = surface_point(world, ray, *hit, prof);
    if (depth == 0) {
      out.albedo = sp.baseColor;
      out.normal = sp.ns;
    }

    ScopedCategory shadeScope(prof, Category::SampleShade);
    const Vec3f wo = -ray.direction;
    const ingest::DisneyMaterial &mat = *sp.material;

    if (mat.dielectric) {
      // Smooth interface: sampled in the frame of the authored normal.
      const Vec3f nAuthored = sp.frontFace ? sp.ng : -sp.ng;
      const Frame frame = Frame::from_normal(nAuthored);
      const shade::DeltaSample ds =
          shade::sample_smooth_dielectric(mat.ior, frame.to_local(wo), sampler.next(), sp.baseColor);
      sampler.next();
      const Vec3f wi = normalize(frame.to_world(ds.wi));
      beta = beta * ds.weight;
      prevDelta = true;
      ray = Ray{offset_origin(sp.p, sp.ng, wi), wi};
    } else {
      Frame frame = Frame::from_normal(sp.ns);
      Vec3f woLocal = frame.to_local(wo);
      if (woLocal.z <= 0.f) {
        frame = Frame::from_normal(sp.ng);
        woLocal = frame.to_local(wo);
      }
      // Next-event estimation with one uniformly picked light.
      const float uPick = sampler.next(), ul1 = sampler.next(), ul2 = sampler.next();
      if (!lights.empty()) {
        const std::size_t li = std::min(lights.size() - 1, std::size_t(uPick * float(lights.size())));
        const shade::LightSample ls = shade::sample_light(lights[li], sp.p, ul1, ul2);
        if (ls.pdf > 0.f && !is_black(ls.radiance) && dot(ls.wi, sp.ng) > 0.f) {
          const Vec3f wiLocal = frame.to_local(ls.wi);
          const shade::BsdfEval e = shade::eval_bsdf(mat, woLocal, wiLocal, sp.baseColor);
          if (!is_black(e.f)) {
            Ray shadow{offset_origin(sp.p, sp.ng, ls.wi), ls.wi};
            if (std::isfinite(ls.distance)) shadow.tmax = ls.distance * (1.f - 1e-4f);
            bool blocked;
            {
              ScopedCategory scope(prof, Category::TraversalIntersect);
              blocked = world.accel().occluded(shadow, ctx.traversal);
              ++out.rays;
            }
            if (!blocked) {
              const float lightPdf = pickPdf * ls.pdf;
              const float w = power_heuristic(lightPdf, e.pdf);
              L += beta * e.f * ls.radiance * (wiLocal.z * w / lightPdf);
            }
          }
        }
      }
      // Continue the path by sampling the BSDF.
      const float u1 = sampler.next(), u2 = sampler.next(), uLobe = sampler.next();
      const auto s = shade::sample_bsdf(mat, woLocal, u1, u2, uLobe, sp.baseColor);
      if (!s) break;
      const Vec3f wi = normalize(frame.to_world(s->wi));
      if (dot(wi, sp.ng) <= 0.f) break;
      beta = beta * s->f * (s->wi.z / s->pdf);
      prevPdf = s->pdf;
      prevDelta = false;
      ray = Ray{offset_origin(sp.p, sp.ng, wi), wi};
    }
    if (depth + 1 >= 3) {
      const float q = std::clamp(luminance(beta), 0.05f, 0.95f);
      if (sampler.next() >= q) break;
      beta = beta / q;
    }
    if (is_black(beta)) break;
  }
  if (!is_finite(L)) {
    L = Rgb{0.f};
    ++ctx.fireflies;
  }
  out.radiance = L;
  return out;
}

} // namespace elephant::render

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/shade/bsdf.hpp"

#include "elephant/shade/albedo_tables.hpp"
#include "elephant/shade/microfacet.hpp"

#include <array>

namespace elephant::shade {

namespace {

using Rgbd = std::array<double, 3>;

double lum(const Rgbd &c) { return 0.2126 * c[0] + 0.7152 * c[1] + 0.0722 * c[2]; }

// Schlick-Fresnel microfacet reflection with its multiple-scattering companion.
struct SpecularFresnel {
  Rgbd f0, f90, fms;
};

SpecularFresnel make_fresnel(const Rgbd &f0, double e1Avg) {
  SpecularFresnel s;
  s.f0 = f0;
  for (int c = 0; c < 3; ++c) {
    s.f90[c] = std::min(1.0, 50.0 * f0[c]);
    const double favg = f0[c] + (s.f90[c] - f0[c]) / 21.0;
    const double denom = 1 - favg * (1 - e1Avg);
    s.fms[c] = denom > 0 ? favg * favg * e1Avg / denom : 0;
  }
  return s;
}

// Directional albedo of the Fresnel-weighted single + multiple scattering lobe.
Rgbd specular_albedo(const SpecularFresnel &s, const GgxAlbedo &e) {
  Rgbd out;
  for (int c = 0; c < 3; ++c) out[c] = s.f0[c] * (e.e1 - e.es) + s.f90[c] * e.es + s.fms[c] * (1 - e.e1);
  return out;
}

struct Layers {
  double metallic, roughness;
  Ggx base;
  Ggx coat;
  double coatRoughness;
  double clearcoat;
  Rgbd color;
  Rgbd sheen; // sheen strength times tint, already scaled by (1 - metallic)
  SpecularFresnel diel, metal;
  GgxAlbedo baseAvg;
  double msNorm; // 1 / (pi (1 - E1avg)), 0 when single scattering is lossless

  Rgbd dielAvg;

  explicit Layers(const DisneyMaterial &m, const Rgb &baseColor) {
    metallic = std::clamp<double>(m.metallic, 0, 1);
    roughness = std::clamp<double>(m.roughness, 1e-3, 1);
    base = Ggx{roughness_to_alpha(roughness)};
    const double gloss = std::clamp<double>(m.clearcoatGloss, 0, 1);
    coat = Ggx{0.1 * (1 - gloss) + 0.001 * gloss};
    coatRoughness = std::sqrt(coat.alpha);
    clearcoat = std::clamp<double>(m.clearcoat, 0, 1);
    for (int c = 0; c < 3; ++c) color[c] = std::clamp<double>(baseColor[c], 0, 1);
    const double peak = std::max({color[0], color[1], color[2]});
    Rgbd tint{1, 1, 1};
    if (peak > 0)
      for (int c = 0; c < 3; ++c) tint[c] = color[c] / peak;
    const double spec = std::clamp<double>(m.specular, 0, 1);
    const double specTint = std::clamp<double>(m.specularTint, 0, 1);
    const double sheenTint = std::clamp<double>(m.sheenTint, 0, 1);
    const double sheenAmount = std::clamp<double>(m.sheen, 0, 1) * (1 - metallic);
    Rgbd f0d;
    for (int c = 0; c < 3; ++c) {
      f0d[c] = 0.08 * spec * ((1 - specTint) + specTint * tint[c]);
      sheen[c] = sheenAmount * ((1 - sheenTint) + sheenTint * tint[c]);
    }
    baseAvg = ggx_albedo_average(roughness);
    diel = make_fresnel(f0d, baseAvg.e1);
    metal = make_fresnel(color, baseAvg.e1);
    msNorm = baseAvg.e1 < 1 - 1e-7 ? 1 / (kPiD * (1 - baseAvg.e1)) : 0;
    const GgxAlbedo avgAsPoint{baseAvg.e1, baseAvg.es};
    dielAvg = specular_albedo(diel, avgAsPoint);
  }

  Rgbd dielectric_albedo(double mu) const { return specular_albedo(diel, ggx_albedo(mu, roughness)); }

  double coat_albedo(double mu) const {
    if (clearcoat <= 0) return 0;
    const GgxAlbedo e = ggx_albedo(mu, coatRoughness);
    return 0.25 * clearcoat * (0.04 * (e.e1 - e.es) + e.es);
  }

  // Transmittance of the sheen + clearcoat layer seen from direction mu.
  Rgbd top_transmittance(double mu) const {
    const double cc = coat_albedo(mu);
    const double sh = sheen_albedo(mu);
    Rgbd a;
    for (int c = 0; c < 3; ++c) a[c] = std::max(0.0, 1 - cc - sheen[c] * sh);
    return a;
  }

  // Diffuse factor (1 - Espec(mu)) for the dielectric base.
  Rgbd diffuse_factor(double mu) const {
    const Rgbd e = dielectric_albedo(mu);
    Rgbd out;
    for (int c = 0; c < 3; ++c) out[c] = 1 - e[c];
    return out;
  }

  std::array<double, 3> probabilities(const Vec3d &wo) const {
    const Rgbd a = top_transmittance(wo.z);
    const GgxAlbedo e = ggx_albedo(wo.z, roughness);
    const Rgbd ed = specular_albedo(diel, e);
    const double sh = sheen_albedo(wo.z);
    // The multiple-scattering term is broad and goes with the cosine lobe.
    Rgbd spec, diff;
    for (int c = 0; c < 3; ++c) {
      const double single = (1 - metallic) * (diel.f0[c] * (e.e1 - e.es) + diel.f90[c] * e.es) +
                            metallic * (metal.f0[c] * (e.e1 - e.es) + metal.f90[c] * e.es);
      const double multi = ((1 - metallic) * diel.fms[c] + metallic * metal.fms[c]) * (1 - e.e1);
      spec[c] = a[c] * single;
      diff[c] = a[c] * ((1 - metallic) * (1 - ed[c]) * color[c] + multi) + sheen[c] * sh;
    }
    std::array<double, 3> p{lum(diff), lum(spec), coat_albedo(wo.z)};
    const double total = p[0] + p[1] + p[2];
    if (!(total > 0)) return {1, 0, 0};
    for (double &x : p) x /= total;
    return p;
  }
};

double folded_pdf(const Ggx &g, const Vec3d &wo, const Vec3d &wi) {
  return g.reflect_pdf(wo, wi) + g.reflect_pdf(wo, {wi.x, wi.y, -wi.z});
}

BsdfEval eval_layers(const Layers &L, const Vec3d &wo, const Vec3d &wi) {
  if (wo.z <= 0 || wi.z <= 0) return {Rgb{0.f}, 0.f};
  const Vec3d h = normalize(wo + wi);
  const double hw = std::clamp(dot(wi, h), 0.0, 1.0);
  const double w = schlick_weight(hw);
  const double mo = wo.z, mi = wi.z;

  // Base: microfacet reflection blended by metallic, plus the compensated diffuse.
  const double dg = L.base.D(h) * L.base.G2(wo, wi) / (4 * mo * mi);
  const GgxAlbedo eo = ggx_albedo(mo, L.roughness), ei = ggx_albedo(mi, L.roughness);
  const double ms = (1 - eo.e1) * (1 - ei.e1) * L.msNorm;
  const Rgbd edo = specular_albedo(L.diel, eo), edi = specular_albedo(L.diel, ei);
  Rgbd fbase;
  for (int c = 0; c < 3; ++c) {
    const double fd = L.diel.f0[c] + (L.diel.f90[c] - L.diel.f0[c]) * w;
    const double fm = L.metal.f0[c] + (L.metal.f90[c] - L.metal.f0[c]) * w;
    const double fresnel = (1 - L.metallic) * fd + L.metallic * fm;
    const double fms = (1 - L.metallic) * L.diel.fms[c] + L.metallic * L.metal.fms[c];
    double diffuse = 0;
    const double norm = 1 - L.dielAvg[c];
    if (norm > 1e-9) diffuse = L.color[c] / kPiD * (1 - edo[c]) * (1 - edi[c]) / norm;
    fbase[c] = dg * fresnel + ms * fms + (1 - L.metallic) * diffuse;
  }

  // Top layer: clearcoat and sheen, with the base seen through it.
  double fcoat = 0;
  if (L.clearcoat > 0) {
    const double fc = 0.04 + 0.96 * w;
    fcoat = 0.25 * L.clearcoat * L.coat.D(h) * L.coat.G2(wo, wi) * fc / (4 * mo * mi);
  }
  const Rgbd ao = L.top_transmittance(mo), ai = L.top_transmittance(mi);
  Rgb f;
  for (int c = 0; c < 3; ++c) f[c] = float(fcoat + L.sheen[c] * w + ao[c] * ai[c] * fbase[c]);

  const auto p = L.probabilities(wo);
  double pdf = p[0] * mi / kPiD;
  if (p[1] > 0) pdf += p[1] * folded_pdf(L.base, wo, wi);
  if (p[2] > 0) pdf += p[2] * folded_pdf(L.coat, wo, wi);
  return {f, float(pdf)};
}

Vec3d to_d(const Vec3f &v) { return {v.x, v.y, v.z}; }

// Kept out of line so eval and sample normalize the float direction identically.
[[gnu::noinline]] Vec3d unit_d(const Vec3f &v) { return normalize(to_d(v)); }

} // namespace

BsdfEval eval_bsdf(const DisneyMaterial &m, const Vec3f &wo, const Vec3f &wi, const Rgb &baseColor) {
  if (wo.z <= 0.f || wi.z <= 0.f) return {Rgb{0.f}, 0.f};
  const Layers L(m, baseColor);
  return eval_layers(L, unit_d(wo), unit_d(wi));
}

std::array<float, 3> lobe_probabilities(const DisneyMaterial &m, const Vec3f &wo, const Rgb &baseColor) {
  if (wo.z <= 0.f) return {0.f, 0.f, 0.f};
  const Layers L(m, baseColor);
  const auto p = L.probabilities(unit_d(wo));
  return {float(p[0]), float(p[1]), float(p[2])};
}

std::optional<BsdfSample> sample_bsdf(const DisneyMaterial &m, const Vec3f &wo, float u1, float u2, float uLobe,
                                      const Rgb &baseColor) {
  if (wo.z <= 0.f) return std::nullopt;
  const Layers L(m, baseColor);
  const Vec3d o = unit_d(wo);
  const auto p = L.probabilities(o);
  Vec3d wi;
  Lobe lobe;
  if (uLobe < p[0]) {
    const double r = std::sqrt(double(u1));
    const double phi = 2 * kPiD * u2;
    wi = {r * std::cos(phi), r * std::sin(phi), std::sqrt(std::max(0.0, 1 - double(u1)))};
    lobe = Lobe::Diffuse;
  } else {
    const bool coat = uLobe >= p[0] + p[1] && p[2] > 0;
    const Ggx &g = coat ? L.coat : L.base;
    wi = reflect(o, g.sample_visible(o, u1, u2));
    if (wi.z < 0) wi.z = -wi.z;
    lobe = coat ? Lobe::Clearcoat : Lobe::Specular;
  }
  const Vec3f wif{float(wi.x), float(wi.y), float(wi.z)};
  if (!(wif.z > 0.f)) return std::nullopt;
  const BsdfEval e = eval_layers(L, o, unit_d(wif));
  if (!(e.pdf > 0.f)) return std::nullopt;
  return BsdfSample{wif, e.f, e.pdf, lobe};
}

float fresnel_dielectric(float cosThetaI, float eta) {
  cosThetaI = std::clamp(cosThetaI, -1.f, 1.f);
  if (cosThetaI < 0.f) {
    eta = 1.f / eta;
    cosThetaI = -cosThetaI;
  }
  const float sin2T = (1.f - cosThetaI * cosThetaI) / (eta * eta);
  if (sin2T >= 1.f) return 1.f;
  const float cosT = std::sqrt(1.f - sin2T);
  const float rs = (cosThetaI - eta * cosT) / (cosThetaI + eta * cosT);
  const float rp = (eta * cosThetaI - cosT) / (eta * cosThetaI + cosT);
  return 0.5f * (rs * rs + rp * rp);
}

DeltaSample sample_smooth_dielectric(float ior, const Vec3f &wo, float uLobe, const Rgb &tint) {
  const float eta = std::max(ior, 1.0001f);
  const float F = fresnel_dielectric(wo.z, eta);
  if (uLobe < F) return {{-wo.x, -wo.y, wo.z}, Rgb{1.f}, Lobe::DeltaReflection};
  const bool entering = wo.z > 0.f;
  const float etaRel = entering ? 1.f / eta : eta;
  const float cosI = std::abs(wo.z);
  const float sin2T = etaRel * etaRel * (1.f - cosI * cosI);
  const float cosT = std::sqrt(std::max(0.f, 1.f - sin2T));
  Vec3f wi = -wo * etaRel;
  wi.z += (entering ? 1.f : -1.f) * (etaRel * cosI - cosT);
  return {normalize(wi), tint, Lobe::DeltaTransmission};
}

} // namespace elephant::shade

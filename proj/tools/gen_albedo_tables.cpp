// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

// Writes the directional-albedo tables used by the principled BSDF.
// Usage: gen_albedo_tables > src/shade/albedo_tables.inc

#include "elephant/shade/albedo_tables.hpp"
#include "elephant/shade/microfacet.hpp"

#include <cstdio>
#include <random>
#include <vector>

using namespace elephant::shade;

namespace {

constexpr int kStrata = 128;

void emit(const char *name, const std::vector<double> &v) {
  std::printf("inline constexpr float %s[%zu] = {\n", name, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) std::printf("%.9g,%s", v[i], (i % 8 == 7) ? "\n" : " ");
  std::printf("};\n\n");
}

} // namespace

int main() {
  const int n = kAlbedoTableSize;
  std::vector<double> e1(std::size_t(n) * n), es(std::size_t(n) * n), sheen(n);
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> U(0.0, 1.0);

  for (int j = 0; j < n; ++j) {
    const Ggx ggx{roughness_to_alpha(albedo_table_roughness(j))};
    for (int i = 0; i < n; ++i) {
      const double mu = albedo_table_mu(i);
      const Vec3d wo{std::sqrt(1 - mu * mu), 0, mu};
      double s1 = 0, ss = 0;
      for (int a = 0; a < kStrata; ++a) {
        for (int b = 0; b < kStrata; ++b) {
          const Vec3d h = ggx.sample_visible(wo, (a + U(rng)) / kStrata, (b + U(rng)) / kStrata);
          const Vec3d wi = reflect(wo, h);
          if (wi.z <= 0) continue;
          const double w = ggx.G2(wo, wi) / ggx.G1(wo);
          s1 += w;
          ss += w * schlick_weight(dot(wo, h));
        }
      }
      e1[std::size_t(j) * n + i] = s1 / (kStrata * kStrata);
      es[std::size_t(j) * n + i] = ss / (kStrata * kStrata);
    }
  }

  for (int i = 0; i < n; ++i) {
    const double mu = albedo_table_mu(i);
    const Vec3d wo{std::sqrt(1 - mu * mu), 0, mu};
    double s = 0;
    const int m = 512;
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        const double r = std::sqrt((a + U(rng)) / m);
        const double phi = 2 * kPiD * (b + U(rng)) / m;
        const Vec3d wi{r * std::cos(phi), r * std::sin(phi), std::sqrt(std::max(0.0, 1 - r * r))};
        const Vec3d h = normalize(wo + wi);
        s += schlick_weight(dot(wi, h));
      }
    }
    // Cosine-weighted mean times pi gives the cosine-weighted integral.
    sheen[i] = kPiD * s / (double(m) * m);
  }

  std::printf("// Generated by gen_albedo_tables. Do not edit.\n\n");
  std::printf("// Rows: roughness index; columns: cos(theta) index.\n");
  emit("kGgxAlbedo", e1);
  emit("kGgxSchlickAlbedo", es);
  std::printf("// Integral of the Schlick weight of cos(theta_d) against cos(theta_i).\n");
  emit("kSheenAlbedo", sheen);
  return 0;
}

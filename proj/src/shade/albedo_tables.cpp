// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/shade/albedo_tables.hpp"

#include <array>
#include <cmath>

namespace elephant::shade {

namespace {

#include "albedo_tables.inc"

constexpr int N = kAlbedoTableSize;

struct Lerp {
  int i0;
  double f;
};

Lerp locate(double x) {
  const double s = std::clamp(x, 0.0, 1.0) * (N - 1);
  const int i0 = std::min(int(s), N - 2);
  return {i0, s - i0};
}

// Exact 2 * integral(f(mu) mu dmu) of the piecewise-linear interpolant of one row.
double row_average(const float *row) {
  const double h = 1.0 / (N - 1);
  double sum = 0;
  for (int i = 0; i + 1 < N; ++i) {
    const double a = i * h, b = (i + 1) * h;
    sum += h * (row[i] * (2 * a + b) + row[i + 1] * (a + 2 * b)) / 6;
  }
  return 2 * sum;
}

struct Averages {
  std::array<double, N> e1, es;
  double sheen;
  Averages() {
    for (int j = 0; j < N; ++j) {
      e1[j] = row_average(kGgxAlbedo + j * N);
      es[j] = row_average(kGgxSchlickAlbedo + j * N);
    }
    sheen = row_average(kSheenAlbedo);
  }
};

const Averages &averages() {
  static const Averages a;
  return a;
}

double bilinear(const float *table, const Lerp &m, const Lerp &r) {
  const float *r0 = table + r.i0 * N;
  const float *r1 = r0 + N;
  const double a = r0[m.i0] + (r0[m.i0 + 1] - r0[m.i0]) * m.f;
  const double b = r1[m.i0] + (r1[m.i0 + 1] - r1[m.i0]) * m.f;
  return a + (b - a) * r.f;
}

} // namespace

GgxAlbedo ggx_albedo(double mu, double roughness) {
  const Lerp m = locate(mu), r = locate(roughness);
  return {bilinear(kGgxAlbedo, m, r), bilinear(kGgxSchlickAlbedo, m, r)};
}

GgxAlbedo ggx_albedo_average(double roughness) {
  const Lerp r = locate(roughness);
  const Averages &a = averages();
  return {a.e1[r.i0] + (a.e1[r.i0 + 1] - a.e1[r.i0]) * r.f, a.es[r.i0] + (a.es[r.i0 + 1] - a.es[r.i0]) * r.f};
}

double sheen_albedo(double mu) {
  const Lerp m = locate(mu);
  return kSheenAlbedo[m.i0] + (kSheenAlbedo[m.i0 + 1] - kSheenAlbedo[m.i0]) * m.f;
}

double sheen_albedo_average() { return averages().sheen; }

} // namespace elephant::shade

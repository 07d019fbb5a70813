// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/harness/bench.hpp"
#include "elephant/harness/traversal_bench.hpp"

#include "elephant/core/error.hpp"
#include "elephant/scene/generator.hpp"

#include "temp_dir.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace elephant;
using namespace elephant::harness;

namespace {

BenchConfig small(uint32_t warmup, uint32_t measure) {
  BenchConfig c;
  c.width = 160;
  c.height = 67;
  c.warmupFrames = warmup;
  c.measuredFrames = measure;
  return c;
}

const ingest::SceneDesc &mini() {
  static const ingest::SceneDesc s = scene::generate_challenge_scene(scene::preset("mini"), 11).scene;
  return s;
}

void check_self_consistent(const BenchReport &r) {
  CHECK(r.frameMillis.size() == r.warmupFrames + r.measuredFrames);
  CHECK(r.pixelSamples == uint64_t(r.width) * r.height * r.measuredFrames);
  CHECK(r.raysPerPixel == doctest::Approx(double(r.raysTraced) / double(r.pixelSamples)));
  CHECK(r.mraysPerSecond == doctest::Approx(double(r.raysTraced) / (r.measuredSeconds * 1e6)));
  double measured = 0;
  for (std::size_t i = r.warmupFrames; i < r.frameMillis.size(); ++i) measured += r.frameMillis[i];
  CHECK(measured / 1000.0 == doctest::Approx(r.measuredSeconds));
  CHECK(r.minFrameMillis <= r.medianFrameMillis);
  CHECK(shares_close(r.shares));
}

} // namespace

TEST_CASE("bench defaults") {
  const BenchConfig c;
  CHECK(c.width == 1536);
  CHECK(c.height == 644);
  CHECK(c.render.maxPathDepth == 5);
  CHECK(c.warmupFrames == 64);
  CHECK(c.measuredFrames == 64);
  CHECK(c.textureCache.byteBudget == std::numeric_limits<uint64_t>::max());
  CHECK(c.textureCache.openHandleCap == 100);
}

TEST_CASE("mini bench with two warm-up and two measured frames") {
  const BenchReport r = bench(mini(), {}, small(2, 2), "mini");
  CHECK(r.measuredFrames == 2);
  CHECK(r.warmupFrames == 2);
  check_self_consistent(r);
  double pct = 0;
  for (double s : r.shares) pct += 100.0 * s;
  CHECK(pct == doctest::Approx(100.0).epsilon(0.005));
  CHECK(r.denoiseMillis > 0.0);
  const std::string text = format_report(r);
  CHECK(text.find("measured_frames=2") != std::string::npos);
  CHECK(text.find("Traversal & Intersect") != std::string::npos);
  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["measuredFrames"] == 2);
  CHECK(j["perFrameMillis"].size() == 4);
  CHECK(j["sharePercents"].size() == 5);
}

TEST_CASE("deterministic benches count the same rays") {
  BenchConfig c = small(1, 2);
  c.render.deterministic = true;
  c.render.seed = 5;
  const BenchReport a = bench(mini(), {}, c, "mini"), b = bench(mini(), {}, c, "mini");
  CHECK(a.raysTraced == b.raysTraced);
  CHECK(a.raysPerPixel == b.raysPerPixel);
  c.workers = 2;
  const BenchReport d = bench(mini(), {}, c, "mini");
  CHECK(d.raysTraced == a.raysTraced);
  check_self_consistent(d);
}

TEST_CASE("cold texture cache makes the first frames slower") {
  testing::TempDir dir;
  const auto g = scene::generate_challenge_scene(scene::preset("textured"), 3);
  scene::write_textures(g, dir.path());
  BenchConfig c = small(5, 6);
  c.denoise = false;
  const BenchReport r = bench(g.scene, dir.path(), c, "textured");
  MESSAGE("first five " << r.warmup_head_mean() << " ms, measured " << r.measured_mean() << " ms");
  CHECK(r.warmup_head_mean() > r.measured_mean());
  CHECK(r.textureCounters.misses > 0);
  CHECK(r.textureCounters.hits > r.textureCounters.misses);
  check_self_consistent(r);
}

TEST_CASE("profile table") {
  const std::string one = report_profile({{"Beach", {0.7, 0.07, 0.02, 0.2, 0.01}}});
  for (const char *v : {"70.00", "7.00", "2.00", "20.00", "1.00"}) CHECK(one.find(v) != std::string::npos);
  CHECK(one.find("Sample & Shade") != std::string::npos);
  CHECK(one.find("70.00") < one.find("7.00 "));

  CHECK_THROWS_AS(report_profile({{"Bad", {0.7, 0.07, 0.02, 0.19, 0.01}}}), SpecOutOfRange);

  const std::string two = report_profile({{"Beach", {0.7, 0.07, 0.02, 0.2, 0.01}}, {"Ocean", {0.5, 0.1, 0.1, 0.2, 0.1}}});
  CHECK(two.find("Beach") < two.find("Ocean"));
  const auto firstRow = two.substr(two.find('\n') + 1);
  CHECK(firstRow.substr(0, firstRow.find('\n')).find("50.00") != std::string::npos);

  render::RenderStats st;
  st.categorySeconds = {3, 1, 0, 1, 0};
  CHECK(report_profile({profile_column("x", st)}).find("60.00") != std::string::npos);
}

TEST_CASE("traversal-only timing counts every ray") {
  const render::World world(mini());
  const TraversalReport r = bench_traversal(world, 64, 32, 2);
  CHECK(r.rays == 64 * 32 * 2);
  CHECK(r.hits > 0);
  CHECK(r.hits <= r.rays);
  CHECK(r.nodeVisitsPerRay > 0.0);
  const TraversalReport serial = bench_traversal(world, 64, 32, 2, false);
  CHECK(serial.hits == r.hits);
  CHECK(format_traversal(r).find("mrays_per_second=") != std::string::npos);
}

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

// End to end: generated scene -> PBRT text -> parse -> quad merge -> BIFF ->
// local and distributed renders, and the command-line tool on the same files.

#include "elephant/dfb/head.hpp"
#include "elephant/ingest/biff.hpp"
#include "elephant/ingest/pbrt_parser.hpp"
#include "elephant/ingest/pbrt_writer.hpp"
#include "elephant/ingest/quad_merge.hpp"
#include "elephant/render/output.hpp"
#include "elephant/render/renderer.hpp"
#include "elephant/scene/generator.hpp"
#include "elephant/scene/stats.hpp"

#include "temp_dir.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace elephant;

namespace {

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string &command) { return std::system(command.c_str()); }

} // namespace

TEST_CASE("textured scene survives text, merge and binary stages and renders the same everywhere") {
  testing::TempDir dir;
  const auto g = scene::generate_challenge_scene(scene::preset("textured"), 8);
  scene::write_textures(g, dir.path());
  {
    std::ofstream f(dir / "scene.pbrt");
    ingest::write_pbrt(g.scene, f);
  }
  ingest::SceneDesc parsed = ingest::parse_pbrt_file(dir / "scene.pbrt");
  CHECK(scene::manifest_matches(g.manifest, scene::scene_stats(parsed)));
  const ingest::MergeSummary merged = ingest::merge_scene_quads(parsed);
  CHECK(merged.mergedShapes > 0);
  ingest::write_biff_file(parsed, dir / "scene.biff");
  const ingest::SceneDesc loaded = ingest::read_biff_file(dir / "scene.biff");
  CHECK(loaded == parsed);

  dfb::HeadOptions o;
  o.width = 160;
  o.height = 70;
  o.config.deterministic = true;
  o.config.seed = 4;
  o.denoise = false;

  const render::World world(loaded, dir.path());
  render::FrameBuffer local(o.width, o.height);
  for (uint32_t f = 0; f < 3; ++f) render::render_frame(world, loaded.camera, local, o.config, f);

  for (bool inlineBytes : {true, false}) {
    CAPTURE(inlineBytes);
    dfb::LocalWorkers pool(3);
    dfb::Head head(pool.take_connections(), dfb::scene_source_from_biff(dir / "scene.biff", inlineBytes), o);
    for (int f = 0; f < 3; ++f) head.step();
    CHECK(head.framebuffer().identical(local));
    head.shutdown();
    pool.join();
  }
}

TEST_CASE("command-line tool") {
  testing::TempDir dir;
  const std::string exe = ELEPHANT_CLI_PATH;
  const std::string d = dir.path().string();
  REQUIRE(run(exe + " gen --preset mini --seed 2 -o " + d + "/m.pbrt > /dev/null") == 0);
  REQUIRE(run(exe + " convert " + d + "/m.pbrt " + d + "/m.biff > /dev/null") == 0);
  REQUIRE(run(exe + " stats " + d + "/m.biff --kv > " + d + "/stats.txt") == 0);
  const auto g = scene::generate_challenge_scene(scene::preset("mini"), 2);
  const std::string stats = slurp(dir / "stats.txt");
  CHECK(stats.find("instance_count=" + std::to_string(g.manifest.instanceCount)) != std::string::npos);

  REQUIRE(run(exe + " render " + d + "/m.biff --res 64x32 --spp 2 --mode geomid -o " + d + "/g.png > /dev/null") ==
          0);
  std::ifstream png(dir / "g.png", std::ios::binary);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(png)), std::istreambuf_iterator<char>());
  uint32_t w = 0, h = 0;
  render::decode_png(bytes, w, h);
  CHECK(w == 64);
  CHECK(h == 32);

  REQUIRE(run(exe + " bench " + d + "/m.biff --res 64x32 --warmup 1 --measure 2 --json " + d +
              "/b.json > /dev/null") == 0);
  CHECK(slurp(dir / "b.json").find("\"measuredFrames\": 2") != std::string::npos);

  CHECK(run(exe + " render " + d + "/missing.biff -o " + d + "/x.png 2> /dev/null") != 0);
  CHECK(run(exe + " bench --preset mini --res 12 2> /dev/null") != 0);
}

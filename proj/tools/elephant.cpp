// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

// elephant: scene conversion, generation, rendering, benchmarking and the
// distributed render service.

#include "elephant/core/error.hpp"
#include "elephant/core/image.hpp"
#include "elephant/dfb/head.hpp"
#include "elephant/dfb/serve.hpp"
#include "elephant/dfb/worker.hpp"
#include "elephant/harness/bench.hpp"
#include "elephant/harness/traversal_bench.hpp"
#include "elephant/ingest/biff.hpp"
#include "elephant/ingest/load.hpp"
#include "elephant/ingest/pbrt_parser.hpp"
#include "elephant/ingest/pbrt_writer.hpp"
#include "elephant/ingest/quad_merge.hpp"
#include "elephant/render/denoise.hpp"
#include "elephant/render/output.hpp"
#include "elephant/render/renderer.hpp"
#include "elephant/scene/generator.hpp"
#include "elephant/scene/stats.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

namespace fs = std::filesystem;
using namespace elephant;

namespace {

struct Resolution {
  uint32_t width = 0, height = 0;
};

Resolution parse_resolution(const std::string &text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument("x");
    const int w = std::stoi(text.substr(0, x)), h = std::stoi(text.substr(x + 1));
    if (w < 1 || h < 1 || w > 16384 || h > 16384) throw std::out_of_range("size");
    return {uint32_t(w), uint32_t(h)};
  } catch (const std::exception &) {
    throw Error("resolution must look like 1536x644, got '" + text + "'");
  }
}

// A scene given as a file, or generated from a preset.
struct LoadedScene {
  ingest::SceneDesc scene;
  fs::path baseDir;
  std::string id;
  std::optional<fs::path> tempDir;

  LoadedScene() = default;
  LoadedScene(const LoadedScene &) = delete;
  LoadedScene(LoadedScene &&o) noexcept
      : scene(std::move(o.scene)), baseDir(std::move(o.baseDir)), id(std::move(o.id)),
        tempDir(std::exchange(o.tempDir, std::nullopt)) {}
  ~LoadedScene() {
    if (tempDir) {
      std::error_code ec;
      fs::remove_all(*tempDir, ec);
    }
  }
};

LoadedScene load_input(const std::string &path, const std::string &preset, uint64_t seed) {
  LoadedScene out;
  if (!preset.empty()) {
    const auto g = scene::generate_challenge_scene(scene::preset(preset), seed);
    out.scene = g.scene;
    out.id = preset;
    if (!g.textures.empty()) {
      out.tempDir = fs::temp_directory_path() / fmt::format("elephant-{}-{}", preset, std::random_device{}());
      scene::write_textures(g, *out.tempDir);
      out.baseDir = *out.tempDir;
    }
    return out;
  }
  if (path.empty()) throw Error("give a scene file or --preset");
  out.scene = ingest::load_scene(path);
  out.baseDir = fs::path(path).parent_path();
  out.id = fs::path(path).stem().string();
  return out;
}

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

int cmd_convert(const std::string &in, const std::string &out, bool noMerge) {
  const auto t0 = std::chrono::steady_clock::now();
  ingest::SceneDesc s = ingest::parse_pbrt_file(in);
  std::size_t merged = 0, kept = 0;
  if (!noMerge) {
    const auto m = ingest::merge_scene_quads(s);
    merged = m.mergedShapes;
    kept = m.keptTriangleShapes;
  }
  ingest::write_biff_file(s, out);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fmt::print("wrote {} ({} bytes) in {:.3f} s; merged {} triangle shapes into quads, kept {}\n", out,
             fs::file_size(out), secs, merged, kept);
  return 0;
}

int cmd_stats(const std::string &path, bool kv) {
  const ingest::SceneDesc s = ingest::load_scene(path);
  const scene::StatsReport r = scene::scene_stats(s);
  std::cout << scene::format_stats(r);
  if (kv) std::cout << scene::format_stats_kv(r);
  return 0;
}

int cmd_gen(const std::string &preset, uint64_t seed, const std::string &out) {
  const auto g = scene::generate_challenge_scene(scene::preset(preset), seed);
  const fs::path path(out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  if (path.extension() == ".pbrt") {
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + out + "'");
    ingest::write_pbrt(g.scene, f);
  } else {
    ingest::write_biff_file(g.scene, path);
  }
  if (!g.textures.empty()) scene::write_textures(g, path.parent_path().empty() ? fs::path(".") : path.parent_path());
  fmt::print("wrote {}: {} objects, {} instances, {} textures\n", out, g.manifest.uniqueObjects,
             g.manifest.instanceCount, g.textures.size());
  return 0;
}

struct RenderArgs {
  std::string scene, preset, out = "out.png", dumpFeatures, mode = "pathtrace", res;
  uint64_t seed = 0, genSeed = 1;
  uint32_t spp = 16, depth = 5, workers = 1;
  int threads = 0;
  float exposure = 1.f;
  bool denoise = false, deterministic = false;
};

int cmd_render(const RenderArgs &a) {
  LoadedScene in = load_input(a.scene, a.preset, a.genSeed);
  Resolution res{in.scene.camera.filmWidth, in.scene.camera.filmHeight};
  if (!a.res.empty()) res = parse_resolution(a.res);
  if (res.width == 0 || res.height == 0) res = {768, 322};

  render::RenderConfig cfg;
  cfg.maxPathDepth = a.depth;
  cfg.samplesPerFrame = a.spp;
  cfg.mode = render::parse_mode(a.mode);
  cfg.deterministic = a.deterministic;
  cfg.seed = a.seed;
  cfg.threads = a.threads;

  render::FrameBuffer fb;
  render::RenderStats stats;
  double buildSeconds = 0;
  const auto t0 = std::chrono::steady_clock::now();
  if (a.workers <= 1) {
    const render::World world(in.scene, in.baseDir);
    buildSeconds = world.build_seconds();
    fb = render::FrameBuffer(res.width, res.height);
    stats = render::render_frame(world, world.camera(), fb, cfg, 0);
  } else {
    dfb::LocalWorkers pool(a.workers);
    dfb::HeadOptions ho;
    ho.width = res.width;
    ho.height = res.height;
    ho.config = cfg;
    ho.denoise = false;
    dfb::Head head(pool.take_connections(), dfb::scene_source(in.scene, in.baseDir), ho);
    stats = head.step();
    fb = head.framebuffer();
    head.shutdown();
    pool.join();
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ImageRgb image = render::resolve(fb, cfg);
  double denoiseMs = 0;
  if (a.denoise && cfg.mode == render::RenderMode::PathTrace) {
    const auto d0 = std::chrono::steady_clock::now();
    image = render::denoise(fb.mean_color(), fb.mean_albedo(), fb.mean_normal(), fb.samples[0]);
    denoiseMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - d0).count();
  }
  render::write_png(a.out, render::display_rgb8(image, cfg.mode, a.exposure), res.width, res.height);
  if (!a.dumpFeatures.empty()) {
    write_pfm(fb.mean_color(), a.dumpFeatures + "_color.pfm");
    write_pfm(fb.mean_albedo(), a.dumpFeatures + "_albedo.pfm");
    write_pfm(fb.mean_normal(), a.dumpFeatures + "_normal.pfm");
  }
  fmt::print("{}x{} {} spp depth {} mode {}: render {:.1f} ms, {:.2f} rays/px, build {:.3f} s, total {:.3f} s",
             res.width, res.height, a.spp, a.depth, render::mode_name(cfg.mode), stats.frameMillis,
             stats.rays_per_pixel(), buildSeconds, total);
  if (denoiseMs > 0) fmt::print(", denoise {:.1f} ms", denoiseMs);
  if (stats.fireflies) fmt::print(", {} non-finite samples zeroed", stats.fireflies);
  fmt::print("\nwrote {}\n", a.out);
  return 0;
}

struct BenchArgs {
  std::string scene, preset, res = "1536x644", json;
  uint64_t seed = 1;
  uint32_t warmup = 64, measure = 64, depth = 5, workers = 1, spp = 1;
  bool deterministic = false, traversalOnly = false, noDenoise = false, warmFiles = false;
  uint32_t passes = 16;
};

int cmd_bench(const BenchArgs &a) {
  LoadedScene in = load_input(a.scene, a.preset, a.seed);
  const Resolution res = parse_resolution(a.res);
  if (a.traversalOnly) {
    const render::World world(in.scene, in.baseDir);
    const auto r = harness::bench_traversal(world, res.width, res.height, a.passes);
    std::cout << harness::format_traversal(r);
    return 0;
  }
  harness::BenchConfig c;
  c.width = res.width;
  c.height = res.height;
  c.warmupFrames = a.warmup;
  c.measuredFrames = a.measure;
  c.workers = a.workers;
  c.denoise = !a.noDenoise;
  c.coldTextureStart = !a.warmFiles;
  c.render.maxPathDepth = a.depth;
  c.render.samplesPerFrame = a.spp;
  c.render.deterministic = a.deterministic;
  const harness::BenchReport r = harness::bench(in.scene, in.baseDir, c, in.id);
  std::cout << harness::format_report(r);
  if (!harness::shares_close(r.shares)) {
    std::cerr << "category shares do not sum to 100%\n";
    return 1;
  }
  if (!a.json.empty()) write_file(a.json, harness::report_json(r) + "\n");
  return 0;
}

struct ServeArgs {
  std::string scene, preset, listen = "127.0.0.1:8080", workers = "1", res = "768x322", format = "png";
  uint64_t seed = 1;
  uint32_t spp = 1, depth = 5, maxFrames = 0;
  bool deterministic = false, noDenoise = false;
};

int cmd_serve(const ServeArgs &a) {
  LoadedScene in = load_input(a.scene, a.preset, a.seed);
  const Resolution res = parse_resolution(a.res);
  const dfb::WorkerSpec spec = dfb::parse_worker_spec(a.workers);

  dfb::HeadOptions ho;
  ho.width = res.width;
  ho.height = res.height;
  ho.config.samplesPerFrame = a.spp;
  ho.config.maxPathDepth = a.depth;
  ho.config.deterministic = a.deterministic;
  ho.denoise = !a.noDenoise;

  dfb::ServeOptions so;
  so.listen = dfb::parse_endpoint(a.listen);
  if (a.format == "raw") so.format = dfb::FrameFormat::RawSrgb8;
  else if (a.format != "png") throw Error("--format must be png or raw");
  so.maxFrames = a.maxFrames;
  so.onListening = [](uint16_t port) { fmt::print("viewer endpoint ws://*:{}/\n", port); };

  std::unique_ptr<dfb::LocalWorkers> pool;
  std::unique_ptr<dfb::TcpListener> listener;
  std::vector<std::unique_ptr<dfb::Connection>> conns;
  if (spec.tcp) {
    listener = std::make_unique<dfb::TcpListener>(spec.listen);
    fmt::print("waiting for {} workers on port {}\n", spec.count, listener->port());
    for (uint32_t i = 0; i < spec.count; ++i) conns.push_back(listener->accept());
  } else {
    pool = std::make_unique<dfb::LocalWorkers>(spec.count);
    conns = pool->take_connections();
  }
  std::fflush(stdout);
  const dfb::ServeSummary s = dfb::serve(so, std::move(conns), dfb::scene_source(in.scene, in.baseDir), ho);
  fmt::print("session ended: {} frames rendered, {} sent, {} controls\n", s.framesRendered, s.framesSent,
             s.controlsApplied);
  if (pool) pool->join();
  return 0;
}

int cmd_worker(const std::string &connect, uint32_t id) {
  auto conn = dfb::tcp_connect(dfb::parse_endpoint(connect), 60.0);
  dfb::run_worker(*conn, id);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"elephant: production-style path tracing at desk scale"};
  app.require_subcommand(1);

  std::string convIn, convOut;
  bool noMerge = false;
  auto *convert = app.add_subcommand("convert", "Convert a PBRT scene to BIFF");
  convert->add_option("input", convIn, "PBRT scene")->required();
  convert->add_option("output", convOut, "BIFF file")->required();
  convert->add_flag("--no-quad-merge", noMerge, "Keep paired triangles as triangles");

  std::string statsPath;
  bool kv = false;
  auto *stats = app.add_subcommand("stats", "Print scene statistics");
  stats->add_option("scene", statsPath, "Scene (.pbrt or .biff)")->required();
  stats->add_flag("--kv", kv, "Also print key=value lines");

  std::string genPreset = "mini", genOut;
  uint64_t genSeed = 1;
  auto *gen = app.add_subcommand("gen", "Generate a challenge scene");
  gen->add_option("--preset", genPreset, "mini, overlap, tessellation or textured");
  gen->add_option("--seed", genSeed, "Generator seed");
  gen->add_option("-o,--output", genOut, "Output .biff or .pbrt")->required();

  RenderArgs ra;
  auto *rend = app.add_subcommand("render", "Render an image");
  rend->add_option("scene", ra.scene, "Scene (.pbrt or .biff)");
  rend->add_option("--preset", ra.preset, "Generate this preset instead of loading a file");
  rend->add_option("--gen-seed", ra.genSeed, "Generator seed for --preset");
  rend->add_option("--spp", ra.spp, "Samples per pixel");
  rend->add_option("--depth", ra.depth, "Maximum path depth");
  rend->add_option("--res", ra.res, "Resolution WxH (default: the scene's film)");
  rend->add_option("--mode", ra.mode, "pathtrace, primid, geomid, instanceid, costheat, albedo or normal");
  rend->add_flag("--denoise", ra.denoise, "Run the feature-guided denoiser");
  rend->add_flag("--deterministic", ra.deterministic, "Reproducible sampling");
  rend->add_option("--seed", ra.seed, "Sampler seed in deterministic mode");
  rend->add_option("--threads", ra.threads, "Render threads (0 = all)");
  rend->add_option("--workers", ra.workers, "Render through this many in-process workers");
  rend->add_option("--exposure", ra.exposure, "Exposure multiplier before tonemapping");
  rend->add_option("-o,--output", ra.out, "PNG output");
  rend->add_option("--dump-features", ra.dumpFeatures, "Write prefix_{color,albedo,normal}.pfm");

  BenchArgs ba;
  auto *bench = app.add_subcommand("bench", "Benchmark steady-state frame times");
  bench->add_option("scene", ba.scene, "Scene (.pbrt or .biff)");
  bench->add_option("--preset", ba.preset, "Generate this preset instead of loading a file");
  bench->add_option("--seed", ba.seed, "Generator seed for --preset");
  bench->add_option("--warmup", ba.warmup, "Warm-up frames");
  bench->add_option("--measure", ba.measure, "Measured frames");
  bench->add_option("--res", ba.res, "Resolution WxH");
  bench->add_option("--depth", ba.depth, "Maximum path depth");
  bench->add_option("--spp", ba.spp, "Samples per pixel per frame");
  bench->add_option("--workers", ba.workers, "In-process workers (1 = single node)");
  bench->add_flag("--deterministic", ba.deterministic, "Reproducible sampling");
  bench->add_flag("--no-denoise", ba.noDenoise, "Skip denoiser timing");
  bench->add_flag("--warm-files", ba.warmFiles, "Leave texture files in the OS page cache");
  bench->add_flag("--traversal-only", ba.traversalOnly, "Time closest-hit queries alone");
  bench->add_option("--passes", ba.passes, "Image passes for --traversal-only");
  bench->add_option("--json", ba.json, "Also write the report as JSON");

  ServeArgs sa;
  auto *serve = app.add_subcommand("serve", "Serve one interactive viewer over WebSocket");
  serve->add_option("scene", sa.scene, "Scene (.pbrt or .biff)");
  serve->add_option("--preset", sa.preset, "Generate this preset instead of loading a file");
  serve->add_option("--seed", sa.seed, "Generator seed for --preset");
  serve->add_option("--listen", sa.listen, "Viewer address host:port");
  serve->add_option("--workers", sa.workers, "N, local:N or tcp:host:port:N");
  serve->add_option("--res", sa.res, "Resolution WxH");
  serve->add_option("--spp", sa.spp, "Samples per pixel per frame");
  serve->add_option("--depth", sa.depth, "Maximum path depth");
  serve->add_option("--format", sa.format, "png or raw");
  serve->add_option("--max-frames", sa.maxFrames, "Stop after this many frames (0 = until the viewer leaves)");
  serve->add_flag("--deterministic", sa.deterministic, "Reproducible sampling");
  serve->add_flag("--no-denoise", sa.noDenoise, "Send frames without denoising");

  std::string connect;
  uint32_t workerId = 0;
  auto *worker = app.add_subcommand("worker", "Render tiles for a head node");
  worker->add_option("--connect", connect, "Head address host:port")->required();
  worker->add_option("--id", workerId, "Worker id; ids order tile ownership");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*convert) return cmd_convert(convIn, convOut, noMerge);
    if (*stats) return cmd_stats(statsPath, kv);
    if (*gen) return cmd_gen(genPreset, genSeed, genOut);
    if (*rend) return cmd_render(ra);
    if (*bench) return cmd_bench(ba);
    if (*serve) return cmd_serve(sa);
    if (*worker) return cmd_worker(connect, workerId);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

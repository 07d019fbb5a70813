// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/scene/generator.hpp"

#include "elephant/core/error.hpp"
#include "elephant/core/hash.hpp"

#include <random>

namespace elephant::scene {

namespace {

constexpr float kTerrainHalfExtent = 50.f;
constexpr int kCoarseOceanCells = 4;
constexpr float kOceanLevel = -0.5f;
constexpr float kOverlayOffset = 1e-3f;
constexpr int kLeafCells = 8;
constexpr int kPebbleRings = 12;
constexpr int kPebbleSegments = 24;
constexpr int kTrunkQuads = 5;

// Bit-reproducible uniform floats; std distributions are implementation-defined.
class Rng {
public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  float uniform() { return float(engine_() >> 40) * 0x1p-24f; }
  float range(float a, float b) { return a + (b - a) * uniform(); }

private:
  std::mt19937_64 engine_;
};

float terrain_height(float x, float z) {
  return 1.5f * std::sin(0.08f * x) * std::cos(0.11f * z) + 0.6f * std::sin(0.31f * x + 0.17f * z);
}

// Quad-pair convention: cell (a,b,c,d) -> triangles (a,b,c),(a,c,d).
TriangleMesh paired_grid(int cellsU, int cellsV, auto &&position) {
  TriangleMesh mesh;
  for (int j = 0; j <= cellsV; ++j)
    for (int i = 0; i <= cellsU; ++i) mesh.positions.push_back(position(float(i) / float(cellsU), float(j) / float(cellsV)));
  const auto at = [&](int i, int j) { return uint32_t(j * (cellsU + 1) + i); };
  for (int j = 0; j < cellsV; ++j) {
    for (int i = 0; i < cellsU; ++i) {
      const uint32_t a = at(i, j), b = at(i, j + 1), c = at(i + 1, j + 1), d = at(i + 1, j);
      mesh.indices.insert(mesh.indices.end(), {a, b, c, a, c, d});
    }
  }
  return mesh;
}

TriangleMesh flat_grid(int cells, float y) {
  return paired_grid(cells, cells, [&](float u, float v) {
    return Vec3f{-kTerrainHalfExtent + 2.f * kTerrainHalfExtent * u, y, -kTerrainHalfExtent + 2.f * kTerrainHalfExtent * v};
  });
}

QuadMesh tapered_box(float height, float bottomHalf, float topHalf) {
  QuadMesh m;
  for (int level = 0; level < 2; ++level) {
    const float h = level == 0 ? 0.f : height;
    const float r = level == 0 ? bottomHalf : topHalf;
    m.positions.insert(m.positions.end(), {{-r, h, -r}, {r, h, -r}, {r, h, r}, {-r, h, r}});
  }
  for (uint32_t k = 0; k < 4; ++k) {
    const uint32_t n = (k + 1) % 4;
    m.indices.insert(m.indices.end(), {k, n, n + 4, k + 4});
  }
  m.indices.insert(m.indices.end(), {4, 7, 6, 5});
  return m;
}

QuadMesh uv_sphere(float radius, int rings, int segments) {
  QuadMesh m;
  for (int r = 0; r <= rings; ++r) {
    const float theta = kPi * float(r) / float(rings);
    for (int s = 0; s <= segments; ++s) {
      const float phi = 2.f * kPi * float(s) / float(segments);
      m.positions.push_back({radius * std::sin(theta) * std::cos(phi), radius * std::cos(theta),
                             radius * std::sin(theta) * std::sin(phi)});
    }
  }
  const auto at = [&](int r, int s) { return uint32_t(r * (segments + 1) + s); };
  for (int r = 0; r < rings; ++r)
    for (int s = 0; s < segments; ++s)
      m.indices.insert(m.indices.end(), {at(r, s), at(r, s + 1), at(r + 1, s + 1), at(r + 1, s)});
  return m;
}

shade::FaceTextureData procedural_texture(uint32_t faces, int res, Rgb base, uint64_t seed) {
  shade::FaceTextureData tex;
  tex.channels = 3;
  tex.encoding = shade::TexelEncoding::Srgb8;
  tex.faces.resize(faces);
  for (uint32_t f = 0; f < faces; ++f) {
    auto &face = tex.faces[f];
    face.resU = face.resV = uint16_t(res);
    face.texels.resize(std::size_t(res) * res * 3);
    const float faceTone = 0.75f + 0.25f * hash_to_unit(hash_values(seed, f));
    for (int v = 0; v < res; ++v) {
      for (int u = 0; u < res; ++u) {
        const float grain = 0.85f + 0.15f * hash_to_unit(hash_values(seed, f, u, v));
        for (int c = 0; c < 3; ++c) {
          const float value = std::clamp(base[c] * faceTone * grain, 0.f, 1.f);
          face.texels[(std::size_t(v) * res + u) * 3 + c] = std::byte(uint8_t(std::lround(value * 255.f)));
        }
      }
    }
  }
  return tex;
}

void check_spec(const GeneratorSpec &s) {
  if (s.terrainResolution <= 0) throw SpecOutOfRange("terrainResolution must be positive");
  if (s.treeObjects < 0 || s.leavesPerTree < 0 || s.pebbles < 0 || s.curveClumps < 0)
    throw SpecOutOfRange("counts must be non-negative");
  if (s.treeObjects > 0 && s.leavesPerTree <= 0) throw SpecOutOfRange("trees need leavesPerTree > 0");
  if (s.curveClumps > 0 && s.curvesPerClump <= 0) throw SpecOutOfRange("curve clumps need curvesPerClump > 0");
  if (!(s.leafSize > 0.f)) throw SpecOutOfRange("leafSize must be positive");
  if (s.textured && (s.textureResolution <= 0 || s.textureResolution > 256 ||
                     (s.textureResolution & (s.textureResolution - 1)) != 0))
    throw SpecOutOfRange("textureResolution must be a power of two <= 256");
}

Manifest expected_manifest(const GeneratorSpec &s) {
  const uint64_t R = uint64_t(s.terrainResolution);
  const uint64_t F = std::max<uint64_t>(4, 2 * R);
  const uint64_t trees = uint64_t(s.treeObjects);
  const uint64_t leaves = trees * uint64_t(s.leavesPerTree);
  const uint64_t leafTris = 2ull * kLeafCells * kLeafCells;
  const uint64_t pebbleQuads = uint64_t(kPebbleRings) * kPebbleSegments;
  const uint64_t overlayTris = s.fineOverlaySurface ? 2 * (kCoarseOceanCells * kCoarseOceanCells + F * F) : 0;
  const bool hasPebble = s.pebbles > 0;

  Manifest m;
  m.uniqueObjects = 1 + (s.fineOverlaySurface ? 2 : 0) + 2 * trees + (hasPebble ? 1 : 0) + uint64_t(s.curveClumps);
  m.uniqueShapes = m.uniqueObjects;
  m.uniqueTriangles = 2 * R * R + overlayTris + trees * leafTris;
  m.uniqueQuads = trees * kTrunkQuads + (hasPebble ? pebbleQuads : 0);
  m.uniqueCurveSegments = uint64_t(s.curveClumps) * uint64_t(s.curvesPerClump);
  m.instanceCount = 1 + (s.fineOverlaySurface ? 2 : 0) + trees + leaves + uint64_t(s.pebbles) + uint64_t(s.curveClumps);
  m.instancedTriangles = 2 * R * R + overlayTris + leaves * leafTris;
  m.instancedQuads = trees * kTrunkQuads + uint64_t(s.pebbles) * pebbleQuads;
  return m;
}

} // namespace

GeneratedScene generate_challenge_scene(const GeneratorSpec &spec, uint64_t seed) {
  check_spec(spec);
  GeneratedScene out;
  out.manifest = expected_manifest(spec);
  ingest::SceneDesc &scene = out.scene;
  Rng rng(seed);

  enum Material : uint32_t { Ground, Water, Bark, Leaf, Pebble, Grass };
  auto material = [](const char *name, Rgb color, float roughness) {
    ingest::DisneyMaterial m;
    m.name = name;
    m.baseColor = color;
    m.roughness = roughness;
    return m;
  };
  scene.materials = {material("ground", {0.45f, 0.38f, 0.25f}, 0.9f), material("water", {0.9f, 0.95f, 1.f}, 0.05f),
                     material("bark", {0.3f, 0.2f, 0.12f}, 0.8f),     material("leaf", {0.2f, 0.45f, 0.12f}, 0.6f),
                     material("pebble", {0.6f, 0.6f, 0.58f}, 0.4f),   material("grass", {0.35f, 0.55f, 0.2f}, 0.7f)};
  scene.materials[Water].specular = 1.f;
  scene.materials[Water].ior = 1.33f;

  auto add_object = [&](std::string name, Geometry g, uint32_t mat) {
    out.manifest.objectBounds[name] = bounds(g);
    scene.objects.push_back({std::move(name), {{std::move(g), mat}}});
    return uint32_t(scene.objects.size() - 1);
  };
  auto instance = [&](uint32_t object, const Affine3 &xf) { scene.instances.push_back({object, xf}); };

  const int R = spec.terrainResolution;
  TriangleMesh terrain = paired_grid(R, R, [&](float u, float v) {
    const float x = -kTerrainHalfExtent + 2.f * kTerrainHalfExtent * u;
    const float z = -kTerrainHalfExtent + 2.f * kTerrainHalfExtent * v;
    return Vec3f{x, terrain_height(x, z), z};
  });
  instance(add_object("terrain", std::move(terrain), Ground), Affine3::identity());

  if (spec.fineOverlaySurface) {
    instance(add_object("ocean_coarse", flat_grid(kCoarseOceanCells, kOceanLevel), Water), Affine3::identity());
    const int fine = std::max(4, 2 * R);
    instance(add_object("ocean_fine", flat_grid(fine, kOceanLevel + kOverlayOffset), Water), Affine3::identity());
  }

  for (int t = 0; t < spec.treeObjects; ++t) {
    const float height = rng.range(4.f, 8.f);
    const float x = rng.range(-30.f, 30.f);
    const float z = rng.range(-30.f, 30.f);
    const Vec3f base{x, terrain_height(x, z), z};
    const uint32_t trunk =
        add_object("tree_" + std::to_string(t), tapered_box(height, 0.25f, 0.12f), Bark);
    instance(trunk, Affine3::translate(base));

    const float half = spec.leafSize * 0.5f;
    const float bend = rng.range(0.05f, 0.2f) * spec.leafSize;
    TriangleMesh leaf = paired_grid(kLeafCells, kLeafCells, [&](float u, float v) {
      const float s = 2.f * u - 1.f;
      return Vec3f{s * half * (1.f - 0.5f * v), bend * s * s, v * spec.leafSize};
    });
    const uint32_t leafObject = add_object("leaf_" + std::to_string(t), std::move(leaf), Leaf);
    const Vec3f crown = base + Vec3f{0.f, height, 0.f};
    const float crownRadius = 1.5f;
    for (int l = 0; l < spec.leavesPerTree; ++l) {
      Vec3f offset;
      do {
        offset = {rng.range(-1.f, 1.f), rng.range(-1.f, 1.f), rng.range(-1.f, 1.f)};
      } while (dot(offset, offset) > 1.f);
      const Affine3 xf = Affine3::translate(crown + offset * crownRadius) *
                         Affine3::rotate(rng.range(0.f, 360.f), {0, 1, 0}) *
                         Affine3::rotate(rng.range(-60.f, 60.f), {1, 0, 0}) *
                         Affine3::scale(Vec3f(rng.range(0.7f, 1.3f)));
      instance(leafObject, xf);
    }
  }

  if (spec.pebbles > 0) {
    const uint32_t pebble = add_object("pebble", uv_sphere(0.02f, kPebbleRings, kPebbleSegments), Pebble);
    for (int p = 0; p < spec.pebbles; ++p) {
      const float x = rng.range(-20.f, 20.f);
      const float z = rng.range(-20.f, 20.f);
      instance(pebble, Affine3::translate({x, terrain_height(x, z) + 0.01f, z}) *
                           Affine3::scale({rng.range(0.6f, 1.6f), rng.range(0.5f, 1.f), rng.range(0.6f, 1.6f)}));
    }
  }

  for (int c = 0; c < spec.curveClumps; ++c) {
    CurveSet grass;
    grass.style = CurveStyle::Flat;
    for (int k = 0; k < spec.curvesPerClump; ++k) {
      const Vec3f root{rng.range(-0.3f, 0.3f), 0.f, rng.range(-0.3f, 0.3f)};
      const float h = rng.range(0.3f, 0.6f);
      const Vec3f lean{rng.range(-0.15f, 0.15f), 0.f, rng.range(-0.15f, 0.15f)};
      for (int i = 0; i < 4; ++i) {
        const float s = float(i) / 3.f;
        grass.controlPoints.push_back(root + Vec3f{0.f, h * s, 0.f} + lean * (s * s));
        grass.widths.push_back(0.01f * (1.f - s) + 0.002f * s);
      }
    }
    const float x = rng.range(-25.f, 25.f);
    const float z = rng.range(-25.f, 25.f);
    instance(add_object("grass_" + std::to_string(c), std::move(grass), Grass),
             Affine3::translate({x, terrain_height(x, z), z}));
  }

  if (spec.textured) {
    auto bind = [&](uint32_t mat, const std::string &name, uint32_t faces, uint64_t texSeed) {
      const std::string path = "textures/" + name + ".ftex";
      scene.materials[mat].textureRef = int32_t(scene.textures.size());
      scene.textures.push_back({name, path, 3});
      out.textures.push_back({path, procedural_texture(faces, spec.textureResolution, scene.materials[mat].baseColor,
                                                       hash_values(seed, texSeed))});
      scene.materials[mat].baseColor = Rgb{1.f};
    };
    bind(Ground, "ground", uint32_t(R) * uint32_t(R), 1);
    if (spec.treeObjects > 0) {
      bind(Bark, "bark", kTrunkQuads, 2);
      bind(Leaf, "leaf", kLeafCells * kLeafCells, 3);
    }
  }

  if (spec.environment) {
    ingest::LightDesc sky;
    sky.kind = ingest::LightKind::Environment;
    sky.radiance = {0.55f, 0.65f, 0.85f};
    scene.lights.push_back(sky);
  }
  if (spec.keyLight) {
    ingest::LightDesc key;
    key.kind = ingest::LightKind::QuadArea;
    // Faces down: (c1-c0) x (c3-c0) = -y.
    key.corners = {Vec3f{-3.f, 30.f, -3.f}, Vec3f{3.f, 30.f, -3.f}, Vec3f{3.f, 30.f, 3.f}, Vec3f{-3.f, 30.f, 3.f}};
    key.radiance = Rgb{40.f, 38.f, 34.f};
    scene.lights.push_back(key);
  }

  scene.camera.position = {0.f, 14.f, 48.f};
  scene.camera.lookAt = {0.f, 2.f, 0.f};
  scene.camera.up = {0.f, 1.f, 0.f};
  scene.camera.fovY = 40.f;
  scene.camera.filmWidth = 1536;
  scene.camera.filmHeight = 644;
  scene.camera.aspect = 1536.f / 644.f;
  return out;
}

GeneratorSpec preset(std::string_view name) {
  GeneratorSpec s;
  if (name == "mini") {
    s.terrainResolution = 8;
    s.fineOverlaySurface = true;
    s.treeObjects = 2;
    s.leavesPerTree = 16;
    s.pebbles = 8;
    s.curveClumps = 2;
  } else if (name == "overlap") {
    s.terrainResolution = 16;
    s.fineOverlaySurface = true;
    s.treeObjects = 4;
    s.leavesPerTree = 400;
    s.leafSize = 0.6f;
    s.curveClumps = 4;
  } else if (name == "tessellation") {
    s.terrainResolution = 128;
    s.fineOverlaySurface = true;
    s.treeObjects = 2;
    s.leavesPerTree = 32;
    s.pebbles = 200;
    s.curveClumps = 8;
  } else if (name == "textured") {
    s.terrainResolution = 48;
    s.treeObjects = 4;
    s.leavesPerTree = 32;
    s.curveClumps = 2;
    s.textured = true;
    s.textureResolution = 64;
  } else {
    throw SpecOutOfRange("unknown preset '" + std::string(name) + "'");
  }
  return s;
}

std::vector<std::string> preset_names() { return {"mini", "overlap", "tessellation", "textured"}; }

void write_textures(const GeneratedScene &g, const std::filesystem::path &dir) {
  for (const auto &t : g.textures) {
    const std::filesystem::path path = dir / t.path;
    std::filesystem::create_directories(path.parent_path());
    shade::write_face_texture_file(t.data, path);
  }
}

bool manifest_matches(const Manifest &m, const StatsReport &s) {
  return m.uniqueObjects == s.uniqueObjects && m.uniqueShapes == s.uniqueShapes &&
         m.uniqueTriangles == s.uniqueTriangles && m.uniqueQuads == s.uniqueQuads &&
         m.uniqueCurveSegments == s.uniqueCurveSegments && m.instanceCount == s.instanceCount &&
         m.instancedTriangles == s.instancedTriangles && m.instancedQuads == s.instancedQuads;
}

ingest::SceneDesc furnace_sphere_scene(int rings, int segments) {
  ingest::SceneDesc scene;
  ingest::DisneyMaterial white;
  white.name = "white";
  white.baseColor = Rgb{1.f};
  scene.materials.push_back(white);
  scene.objects.push_back({"sphere", {{uv_sphere(1.f, rings, segments), 0}}});
  scene.instances.push_back({0, Affine3::identity()});
  ingest::LightDesc env;
  env.kind = ingest::LightKind::Environment;
  env.radiance = Rgb{1.f};
  scene.lights.push_back(env);
  scene.camera.position = {0.f, 0.f, 4.f};
  scene.camera.lookAt = {0.f, 0.f, 0.f};
  scene.camera.up = {0.f, 1.f, 0.f};
  scene.camera.fovY = 40.f;
  scene.camera.aspect = 1.f;
  return scene;
}

} // namespace elephant::scene

// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "elephant/core/math.hpp"
#include "elephant/scene/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace elephant::ingest {

enum class ShapeKind : uint32_t { TriangleMesh = 0, QuadMesh = 1, CurveSet = 2 };

struct ShapeDesc {
  scene::Geometry geometry;
  uint32_t materialRef = 0;

  ShapeKind kind() const { return ShapeKind(geometry.index()); }
  friend bool operator==(const ShapeDesc &, const ShapeDesc &) = default;
};

struct NamedObject {
  std::string name;
  std::vector<ShapeDesc> shapes;
  friend bool operator==(const NamedObject &, const NamedObject &) = default;
};

struct InstanceDesc {
  uint32_t objectRef = 0;
  Affine3 transform; // object to world
  friend bool operator==(const InstanceDesc &, const InstanceDesc &) = default;
};

// Parameters of the principled material. Scalars live in [0,1]; ior >= 1.
struct DisneyMaterial {
  std::string name;
  Rgb baseColor{0.8f};
  int32_t textureRef = -1; // -1 = untextured; otherwise modulates baseColor
  float metallic = 0.f;
  float roughness = 0.5f;
  float specular = 0.5f;
  float specularTint = 0.f;
  float sheen = 0.f;
  float sheenTint = 0.5f;
  float clearcoat = 0.f;
  float clearcoatGloss = 1.f;
  float ior = 1.5f;
  bool dielectric = false; // smooth refractive special case (water)

  friend bool operator==(const DisneyMaterial &, const DisneyMaterial &) = default;
};

struct FaceTextureRef {
  std::string name;
  std::string path;
  uint32_t channels = 3;
  friend bool operator==(const FaceTextureRef &, const FaceTextureRef &) = default;
};

enum class LightKind : uint32_t { QuadArea = 0, Environment = 1 };

struct LightDesc {
  LightKind kind = LightKind::QuadArea;
  std::array<Vec3f, 4> corners{}; // QuadArea, world space; emits towards (c1-c0)x(c3-c0)
  Rgb radiance{0.f};              // QuadArea radiance, or constant environment radiance
  std::string imagePath;          // Environment lat-long image (PFM); empty = constant
  float scale = 1.f;              // multiplies the environment image

  friend bool operator==(const LightDesc &, const LightDesc &) = default;
};

struct CameraDesc {
  Vec3f position{0.f, 0.f, 5.f};
  Vec3f lookAt{0.f, 0.f, 0.f};
  Vec3f up{0.f, 1.f, 0.f};
  float fovY = 45.f; // degrees
  float aspect = 1.f;
  uint32_t filmWidth = 0; // 0 = unspecified
  uint32_t filmHeight = 0;

  friend bool operator==(const CameraDesc &, const CameraDesc &) = default;
};

struct SceneDesc {
  std::vector<NamedObject> objects;
  std::vector<InstanceDesc> instances;
  std::vector<DisneyMaterial> materials;
  std::vector<FaceTextureRef> textures;
  std::vector<LightDesc> lights;
  CameraDesc camera;

  friend bool operator==(const SceneDesc &, const SceneDesc &) = default;
};

// Checks reference validity and transform invertibility; throws InvalidScene.
void validate(const SceneDesc &scene);

} // namespace elephant::ingest

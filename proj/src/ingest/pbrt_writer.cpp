// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/ingest/pbrt_writer.hpp"

#include "elephant/core/error.hpp"

#include <charconv>
#include <ostream>
#include <string>
#include <unordered_set>

namespace elephant::ingest {

namespace {

class Emitter {
public:
  explicit Emitter(std::ostream &out) : out_(out) { buf_.reserve(1 << 16); }
  ~Emitter() { flush(); }

  Emitter &raw(std::string_view s) {
    buf_ += s;
    if (buf_.size() > (1 << 16)) flush();
    return *this;
  }

  Emitter &num(float f) {
    char tmp[32];
    const auto r = std::to_chars(tmp, tmp + sizeof(tmp), f);
    buf_.append(tmp, r.ptr);
    buf_ += ' ';
    return *this;
  }

  Emitter &num(uint64_t i) {
    char tmp[32];
    const auto r = std::to_chars(tmp, tmp + sizeof(tmp), i);
    buf_.append(tmp, r.ptr);
    buf_ += ' ';
    return *this;
  }

  Emitter &str(std::string_view s) {
    buf_ += '"';
    buf_ += s;
    buf_ += "\" ";
    return *this;
  }

  Emitter &points(std::string_view decl, const std::vector<Vec3f> &pts) {
    str(decl).raw("[ ");
    for (const auto &p : pts) num(p.x).num(p.y).num(p.z);
    return raw("]\n");
  }

  Emitter &indices(const std::vector<uint32_t> &idx) {
    str("integer indices").raw("[ ");
    for (uint32_t i : idx) num(uint64_t(i));
    return raw("]\n");
  }

  Emitter &rgb(std::string_view decl, const Rgb &c) { return str(decl).raw("[ ").num(c.x).num(c.y).num(c.z).raw("] "); }

  Emitter &transform(const Affine3 &m) {
    raw("Transform [ ");
    for (int c = 0; c < 4; ++c) {
      for (int r = 0; r < 3; ++r) num(m(r, c));
      num(c == 3 ? 1.f : 0.f);
    }
    return raw("]\n");
  }

  void flush() {
    out_.write(buf_.data(), std::streamsize(buf_.size()));
    buf_.clear();
  }

private:
  std::ostream &out_;
  std::string buf_;
};

std::string material_name(const SceneDesc &scene, std::size_t i) {
  return scene.materials[i].name.empty() ? "material#" + std::to_string(i) : scene.materials[i].name;
}

} // namespace

void write_pbrt(const SceneDesc &scene, std::ostream &out) {
  std::unordered_set<std::string> names;
  for (const auto &o : scene.objects)
    if (o.name.empty() || !names.insert(o.name).second)
      throw InvalidScene("write_pbrt requires unique non-empty object names");

  Emitter e(out);
  const CameraDesc &cam = scene.camera;
  e.raw("LookAt ").num(cam.position.x).num(cam.position.y).num(cam.position.z);
  e.num(cam.lookAt.x).num(cam.lookAt.y).num(cam.lookAt.z);
  e.num(cam.up.x).num(cam.up.y).num(cam.up.z).raw("\n");
  float fov = cam.fovY;
  if (cam.aspect < 1.f) {
    const double half = double(cam.fovY) * 3.14159265358979323846 / 360.0;
    fov = float(2.0 * std::atan(std::tan(half) * cam.aspect) * 180.0 / 3.14159265358979323846);
  }
  e.raw("Camera ").str("perspective").str("float fov").raw("[ ").num(fov).raw("]\n");
  if (cam.filmWidth > 0 && cam.filmHeight > 0) {
    e.raw("Film ").str("image").str("integer xresolution").raw("[ ").num(uint64_t(cam.filmWidth)).raw("] ");
    e.str("integer yresolution").raw("[ ").num(uint64_t(cam.filmHeight)).raw("]\n");
  }
  e.raw("WorldBegin\n");

  for (const auto &t : scene.textures) {
    e.raw("Texture ").str(t.name).str("color").str("facetex").str("string filename").str(t.path);
    e.str("integer channels").raw("[ ").num(uint64_t(t.channels)).raw("]\n");
  }
  for (std::size_t i = 0; i < scene.materials.size(); ++i) {
    const DisneyMaterial &m = scene.materials[i];
    e.raw("MakeNamedMaterial ").str(material_name(scene, i)).str("string type").str("disney");
    if (m.textureRef >= 0)
      e.str("texture color").str(scene.textures[std::size_t(m.textureRef)].name);
    else
      e.rgb("rgb color", m.baseColor);
    e.str("float metallic").num(m.metallic).str("float roughness").num(m.roughness);
    e.str("float specular").num(m.specular).str("float speculartint").num(m.specularTint);
    e.str("float sheen").num(m.sheen).str("float sheentint").num(m.sheenTint);
    e.str("float clearcoat").num(m.clearcoat).str("float clearcoatgloss").num(m.clearcoatGloss);
    e.str("float eta").num(m.ior);
    if (m.dielectric) e.str("float spectrans").num(1.f);
    e.raw("\n");
  }
  for (const auto &l : scene.lights) {
    if (l.kind == LightKind::Environment) {
      e.raw("LightSource ").str("infinite").rgb("rgb L", l.radiance).str("float scale").num(l.scale);
      if (!l.imagePath.empty()) e.str("string mapname").str(l.imagePath);
      e.raw("\n");
    } else {
      e.raw("AttributeBegin\nAreaLightSource ").str("diffuse").rgb("rgb L", l.radiance).raw("\n");
      e.raw("Shape ").str("quadmesh").points("point P", {l.corners.begin(), l.corners.end()});
      e.indices({0, 1, 2, 3}).raw("AttributeEnd\n");
    }
  }

  for (const auto &o : scene.objects) {
    e.raw("ObjectBegin ").str(o.name).raw("\n");
    for (const auto &s : o.shapes) {
      e.raw("NamedMaterial ").str(material_name(scene, s.materialRef)).raw("\n");
      std::visit(
          [&](const auto &g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, scene::TriangleMesh>) {
              e.raw("Shape ").str("trianglemesh").indices(g.indices).points("point P", g.positions);
              if (!g.normals.empty()) e.points("normal N", g.normals);
            } else if constexpr (std::is_same_v<G, scene::QuadMesh>) {
              e.raw("Shape ").str("quadmesh").indices(g.indices).points("point P", g.positions);
            } else {
              e.raw("Shape ").str("curve").str("string type").str(g.style == scene::CurveStyle::Flat ? "flat" : "round");
              e.str("integer segments").raw("[ ").num(uint64_t(g.segment_count())).raw("]\n");
              e.points("point P", g.controlPoints);
              e.str("float widths").raw("[ ");
              for (float w : g.widths) e.num(w);
              e.raw("]\n");
            }
          },
          s.geometry);
    }
    e.raw("ObjectEnd\n");
  }
  for (const auto &inst : scene.instances) {
    e.raw("AttributeBegin\n").transform(inst.transform);
    e.raw("ObjectInstance ").str(scene.objects[inst.objectRef].name).raw("\nAttributeEnd\n");
  }
  e.raw("WorldEnd\n");
}

} // namespace elephant::ingest

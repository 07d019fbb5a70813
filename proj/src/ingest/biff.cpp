// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/ingest/biff.hpp"

#include "elephant/core/error.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>

static_assert(std::endian::native == std::endian::little, "BIFF i/o assumes a little-endian host");
static_assert(sizeof(elephant::Vec3f) == 12);

namespace elephant::ingest {

namespace {

constexpr uint32_t kNoString = 0xffffffffu;

class ByteWriter {
public:
  template <typename T>
  void put(T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    const auto *p = reinterpret_cast<const std::byte *>(&v);
    bytes.insert(bytes.end(), p, p + sizeof(T));
  }

  template <typename T>
  void put_array(std::span<const T> values, std::size_t scalarsPerElement) {
    put<uint64_t>(values.size() * scalarsPerElement);
    const auto *p = reinterpret_cast<const std::byte *>(values.data());
    bytes.insert(bytes.end(), p, p + values.size_bytes());
  }

  std::vector<std::byte> bytes;
};

class ByteReader {
public:
  ByteReader(std::span<const std::byte> data, uint64_t base) : data_(data), base_(base) {}

  template <typename T>
  T get() {
    T v;
    need(sizeof(T));
    std::memcpy(&v, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  template <typename T>
  std::vector<T> get_array(std::size_t scalarsPerElement) {
    const uint64_t scalars = get<uint64_t>();
    if (scalars % scalarsPerElement != 0) throw TruncatedStream(base_ + pos_);
    const uint64_t count = scalars / scalarsPerElement;
    if (count > (data_.size() - pos_) / sizeof(T)) throw TruncatedStream(base_ + data_.size());
    std::vector<T> out(count);
    std::memcpy(out.data(), data_.data() + pos_, count * sizeof(T));
    pos_ += count * sizeof(T);
    return out;
  }

  std::string get_string() {
    const uint32_t len = get<uint32_t>();
    need(len);
    std::string s(reinterpret_cast<const char *>(data_.data() + pos_), len);
    pos_ += len;
    return s;
  }

private:
  void need(std::size_t n) const {
    if (n > data_.size() - pos_) throw TruncatedStream(base_ + data_.size());
  }

  std::span<const std::byte> data_;
  uint64_t base_;
  std::size_t pos_ = 0;
};

class StringTable {
public:
  uint32_t intern(const std::string &s) {
    const auto [it, inserted] = index_.try_emplace(s, uint32_t(strings_.size()));
    if (inserted) strings_.push_back(s);
    return it->second;
  }
  const std::vector<std::string> &strings() const { return strings_; }

private:
  std::unordered_map<std::string, uint32_t> index_;
  std::vector<std::string> strings_;
};

void put_vec(ByteWriter &w, const Vec3f &v) {
  w.put(v.x);
  w.put(v.y);
  w.put(v.z);
}

Vec3f get_vec(ByteReader &r) {
  Vec3f v;
  v.x = r.get<float>();
  v.y = r.get<float>();
  v.z = r.get<float>();
  return v;
}

const std::string &lookup(const std::vector<std::string> &strings, uint32_t idx) {
  if (idx >= strings.size()) throw InvalidScene("BIFF string index out of range");
  return strings[idx];
}

} // namespace

std::vector<std::byte> encode_biff(const SceneDesc &scene) {
  StringTable strings;
  std::map<BiffSection, ByteWriter> sections;

  if (!scene.materials.empty()) {
    ByteWriter &w = sections[BiffSection::Materials];
    w.put<uint64_t>(scene.materials.size());
    for (const auto &m : scene.materials) {
      w.put(strings.intern(m.name));
      put_vec(w, m.baseColor);
      w.put(m.textureRef);
      for (float f : {m.metallic, m.roughness, m.specular, m.specularTint, m.sheen, m.sheenTint, m.clearcoat,
                      m.clearcoatGloss, m.ior})
        w.put(f);
      w.put<uint32_t>(m.dielectric ? 1u : 0u);
    }
  }
  if (!scene.textures.empty()) {
    ByteWriter &w = sections[BiffSection::Textures];
    w.put<uint64_t>(scene.textures.size());
    for (const auto &t : scene.textures) {
      w.put(strings.intern(t.name));
      w.put(strings.intern(t.path));
      w.put(t.channels);
    }
  }
  if (!scene.lights.empty()) {
    ByteWriter &w = sections[BiffSection::Lights];
    w.put<uint64_t>(scene.lights.size());
    for (const auto &l : scene.lights) {
      w.put(uint32_t(l.kind));
      for (const auto &c : l.corners) put_vec(w, c);
      put_vec(w, l.radiance);
      w.put(l.imagePath.empty() ? kNoString : strings.intern(l.imagePath));
      w.put(l.scale);
    }
  }
  if (!(scene.camera == CameraDesc{})) {
    ByteWriter &w = sections[BiffSection::Camera];
    const CameraDesc &c = scene.camera;
    put_vec(w, c.position);
    put_vec(w, c.lookAt);
    put_vec(w, c.up);
    w.put(c.fovY);
    w.put(c.aspect);
    w.put(c.filmWidth);
    w.put(c.filmHeight);
  }
  if (!scene.objects.empty()) {
    ByteWriter &w = sections[BiffSection::Objects];
    w.put<uint64_t>(scene.objects.size());
    for (const auto &o : scene.objects) {
      w.put(strings.intern(o.name));
      w.put<uint64_t>(o.shapes.size());
      for (const auto &s : o.shapes) {
        w.put(uint32_t(s.kind()));
        w.put(s.materialRef);
        std::visit(
            [&](const auto &g) {
              using G = std::decay_t<decltype(g)>;
              if constexpr (std::is_same_v<G, scene::TriangleMesh>) {
                w.put_array(std::span(g.positions), 3);
                w.put_array(std::span(g.indices), 1);
                w.put_array(std::span(g.normals), 3);
              } else if constexpr (std::is_same_v<G, scene::QuadMesh>) {
                w.put_array(std::span(g.positions), 3);
                w.put_array(std::span(g.indices), 1);
              } else {
                w.put(uint32_t(g.style));
                w.put_array(std::span(g.controlPoints), 3);
                w.put_array(std::span(g.widths), 1);
              }
            },
            s.geometry);
      }
    }
  }
  if (!scene.instances.empty()) {
    ByteWriter &w = sections[BiffSection::Instances];
    w.put<uint64_t>(scene.instances.size());
    for (const auto &i : scene.instances) {
      w.put(i.objectRef);
      for (float f : i.transform.m) w.put(f);
    }
  }
  if (!strings.strings().empty()) {
    ByteWriter &w = sections[BiffSection::Strings];
    w.put<uint64_t>(strings.strings().size());
    for (const auto &s : strings.strings()) {
      w.put(uint32_t(s.size()));
      const auto *p = reinterpret_cast<const std::byte *>(s.data());
      w.bytes.insert(w.bytes.end(), p, p + s.size());
    }
  }

  ByteWriter out;
  for (char c : {'B', 'I', 'F', 'F'}) out.put(c);
  out.put(kBiffVersion);
  out.put(uint32_t(sections.size()));
  uint64_t offset = kBiffHeaderSize + kBiffSectionEntrySize * sections.size();
  for (const auto &[tag, w] : sections) {
    out.put(uint32_t(tag));
    out.put(offset);
    out.put(uint64_t(w.bytes.size()));
    offset += w.bytes.size();
  }
  for (const auto &[tag, w] : sections) out.bytes.insert(out.bytes.end(), w.bytes.begin(), w.bytes.end());
  return std::move(out.bytes);
}

SceneDesc decode_biff(std::span<const std::byte> bytes) {
  if (bytes.size() < 4) throw TruncatedStream(bytes.size());
  if (std::memcmp(bytes.data(), "BIFF", 4) != 0) throw BadMagic();
  ByteReader header(bytes.subspan(4), 4);
  const uint32_t version = header.get<uint32_t>();
  if (version != kBiffVersion) throw UnsupportedVersion(version, kBiffVersion);
  const uint32_t count = header.get<uint32_t>();

  std::map<BiffSection, std::span<const std::byte>> sections;
  std::map<BiffSection, uint64_t> bases;
  for (uint32_t i = 0; i < count; ++i) {
    const auto tag = BiffSection(header.get<uint32_t>());
    const uint64_t offset = header.get<uint64_t>();
    const uint64_t length = header.get<uint64_t>();
    if (offset > bytes.size() || length > bytes.size() - offset) throw TruncatedStream(bytes.size());
    sections[tag] = bytes.subspan(offset, length);
    bases[tag] = offset;
  }
  auto reader = [&](BiffSection tag) -> std::optional<ByteReader> {
    const auto it = sections.find(tag);
    if (it == sections.end()) return std::nullopt;
    return ByteReader(it->second, bases[tag]);
  };

  SceneDesc scene;
  std::vector<std::string> strings;
  if (auto r = reader(BiffSection::Strings)) {
    const uint64_t n = r->get<uint64_t>();
    for (uint64_t i = 0; i < n; ++i) strings.push_back(r->get_string());
  }
  if (auto r = reader(BiffSection::Materials)) {
    const uint64_t n = r->get<uint64_t>();
    for (uint64_t i = 0; i < n; ++i) {
      DisneyMaterial m;
      m.name = lookup(strings, r->get<uint32_t>());
      m.baseColor = get_vec(*r);
      m.textureRef = r->get<int32_t>();
      for (float *f : {&m.metallic, &m.roughness, &m.specular, &m.specularTint, &m.sheen, &m.sheenTint,
                       &m.clearcoat, &m.clearcoatGloss, &m.ior})
        *f = r->get<float>();
      m.dielectric = r->get<uint32_t>() != 0;
      scene.materials.push_back(std::move(m));
    }
  }
  if (auto r = reader(BiffSection::Textures)) {
    const uint64_t n = r->get<uint64_t>();
    for (uint64_t i = 0; i < n; ++i) {
      FaceTextureRef t;
      t.name = lookup(strings, r->get<uint32_t>());
      t.path = lookup(strings, r->get<uint32_t>());
      t.channels = r->get<uint32_t>();
      scene.textures.push_back(std::move(t));
    }
  }
  if (auto r = reader(BiffSection::Lights)) {
    const uint64_t n = r->get<uint64_t>();
    for (uint64_t i = 0; i < n; ++i) {
      LightDesc l;
      l.kind = LightKind(r->get<uint32_t>());
      for (auto &c : l.corners) c = get_vec(*r);
      l.radiance = get_vec(*r);
      const uint32_t path = r->get<uint32_t>();
      if (path != kNoString) l.imagePath = lookup(strings, path);
      l.scale = r->get<float>();
      scene.lights.push_back(std::move(l));
    }
  }
  if (auto r = reader(BiffSection::Camera)) {
    CameraDesc &c = scene.camera;
    c.position = get_vec(*r);
    c.lookAt = get_vec(*r);
    c.up = get_vec(*r);
    c.fovY = r->get<float>();
    c.aspect = r->get<float>();
    c.filmWidth = r->get<uint32_t>();
    c.filmHeight = r->get<uint32_t>();
  }
  if (auto r = reader(BiffSection::Objects)) {
    const uint64_t n = r->get<uint64_t>();
    scene.objects.reserve(n);
    for (uint64_t i = 0; i < n; ++i) {
      NamedObject o;
      o.name = lookup(strings, r->get<uint32_t>());
      const uint64_t shapes = r->get<uint64_t>();
      for (uint64_t s = 0; s < shapes; ++s) {
        ShapeDesc shape;
        const uint32_t kind = r->get<uint32_t>();
        shape.materialRef = r->get<uint32_t>();
        switch (ShapeKind(kind)) {
        case ShapeKind::TriangleMesh: {
          scene::TriangleMesh g;
          g.positions = r->get_array<Vec3f>(3);
          g.indices = r->get_array<uint32_t>(1);
          g.normals = r->get_array<Vec3f>(3);
          shape.geometry = std::move(g);
          break;
        }
        case ShapeKind::QuadMesh: {
          scene::QuadMesh g;
          g.positions = r->get_array<Vec3f>(3);
          g.indices = r->get_array<uint32_t>(1);
          shape.geometry = std::move(g);
          break;
        }
        case ShapeKind::CurveSet: {
          scene::CurveSet g;
          g.style = scene::CurveStyle(r->get<uint32_t>());
          g.controlPoints = r->get_array<Vec3f>(3);
          g.widths = r->get_array<float>(1);
          shape.geometry = std::move(g);
          break;
        }
        default:
          throw InvalidScene("BIFF shape kind " + std::to_string(kind) + " unknown");
        }
        o.shapes.push_back(std::move(shape));
      }
      scene.objects.push_back(std::move(o));
    }
  }
  if (auto r = reader(BiffSection::Instances)) {
    const uint64_t n = r->get<uint64_t>();
    scene.instances.resize(n);
    for (auto &inst : scene.instances) {
      inst.objectRef = r->get<uint32_t>();
      for (float &f : inst.transform.m) f = r->get<float>();
    }
  }
  return scene;
}

std::size_t write_biff(const SceneDesc &scene, std::ostream &sink) {
  const std::vector<std::byte> bytes = encode_biff(scene);
  sink.write(reinterpret_cast<const char *>(bytes.data()), std::streamsize(bytes.size()));
  return bytes.size();
}

SceneDesc read_biff(std::istream &source) {
  std::vector<std::byte> bytes;
  const auto start = source.tellg();
  if (start != std::streampos(-1) && source.seekg(0, std::ios::end)) {
    const auto end = source.tellg();
    source.seekg(start);
    bytes.resize(std::size_t(end - start));
    source.read(reinterpret_cast<char *>(bytes.data()), std::streamsize(bytes.size()));
  } else {
    source.clear();
    std::vector<char> raw((std::istreambuf_iterator<char>(source)), std::istreambuf_iterator<char>());
    bytes.resize(raw.size());
    std::memcpy(bytes.data(), raw.data(), raw.size());
  }
  return decode_biff(bytes);
}

void write_biff_file(const SceneDesc &scene, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_biff(scene, out);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

SceneDesc read_biff_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  const auto size = std::size_t(in.tellg());
  in.seekg(0);
  std::vector<std::byte> bytes(size);
  in.read(reinterpret_cast<char *>(bytes.data()), std::streamsize(size));
  return decode_biff(bytes);
}

} // namespace elephant::ingest

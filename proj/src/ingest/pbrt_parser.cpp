// Copyright 2026 The Elephant Authors
// SPDX-License-Identifier: Apache-2.0

#include "elephant/ingest/pbrt_parser.hpp"

#include "elephant/core/error.hpp"
#include "elephant/ingest/quad_merge.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace elephant::ingest {

namespace {

struct Token {
  enum class Kind { Identifier, String, Number, OpenBracket, CloseBracket, End };
  Kind kind = Kind::End;
  std::string_view text;
  int line = 0;
};

class Tokenizer {
public:
  explicit Tokenizer(std::string_view src) : src_(src) {}

  const Token &peek() {
    if (!peeked_) {
      next_ = scan();
      peeked_ = true;
    }
    return next_;
  }

  Token next() {
    peek();
    peeked_ = false;
    return next_;
  }

  int line() const { return line_; }

private:
  Token scan() {
    for (;;) {
      while (pos_ < src_.size() && is_space(src_[pos_])) {
        if (src_[pos_] == '\n') ++line_;
        ++pos_;
      }
      if (pos_ < src_.size() && src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        continue;
      }
      break;
    }
    if (pos_ >= src_.size()) return {Token::Kind::End, {}, line_};
    const char c = src_[pos_];
    if (c == '[') return {Token::Kind::OpenBracket, src_.substr(pos_++, 1), line_};
    if (c == ']') return {Token::Kind::CloseBracket, src_.substr(pos_++, 1), line_};
    if (c == '"') {
      const std::size_t start = ++pos_;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        if (src_[pos_] == '\n') throw SyntaxError(line_, "closing quote");
        ++pos_;
      }
      if (pos_ >= src_.size()) throw SyntaxError(line_, "closing quote");
      return {Token::Kind::String, src_.substr(start, pos_++ - start), line_};
    }
    const std::size_t start = pos_;
    while (pos_ < src_.size() && !is_space(src_[pos_]) && src_[pos_] != '"' && src_[pos_] != '[' &&
           src_[pos_] != ']' && src_[pos_] != '#')
      ++pos_;
    const std::string_view text = src_.substr(start, pos_ - start);
    const bool numeric = (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.';
    return {numeric ? Token::Kind::Number : Token::Kind::Identifier, text, line_};
  }

  static bool is_space(char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r'; }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  Token next_;
  bool peeked_ = false;
};

float parse_float(const Token &tok) {
  std::string_view s = tok.text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  float value = 0.f;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw SyntaxError(tok.line, "number");
  return value;
}

int64_t parse_int(const Token &tok) {
  std::string_view s = tok.text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw SyntaxError(tok.line, "integer");
  return value;
}

// One "type name" [values] entry of a parameter list.
struct Param {
  std::string type;
  std::string name;
  std::vector<float> numbers;
  std::vector<int64_t> integers;
  std::vector<std::string> strings;
  int line = 0;
};

class ParamList {
public:
  std::vector<Param> params;

  const Param *find(std::string_view name) const {
    for (const auto &p : params)
      if (p.name == name) return &p;
    return nullptr;
  }

  float get_float(std::string_view name, float fallback) const {
    const Param *p = find(name);
    if (!p) return fallback;
    if (!p->integers.empty()) return float(p->integers.front());
    if (p->numbers.empty()) return fallback;
    return p->numbers.front();
  }

  std::optional<Rgb> get_rgb(std::string_view name) const {
    const Param *p = find(name);
    if (!p || p->type == "texture") return std::nullopt;
    if (p->numbers.size() != 3) throw SyntaxError(p->line, "3 color components for '" + p->name + "'");
    return Rgb{p->numbers[0], p->numbers[1], p->numbers[2]};
  }

  std::optional<std::string> get_string(std::string_view name) const {
    const Param *p = find(name);
    if (!p || p->strings.empty()) return std::nullopt;
    return p->strings.front();
  }

  std::vector<Vec3f> get_points(std::string_view name) const {
    std::vector<Vec3f> out;
    const Param *p = find(name);
    if (!p) return out;
    if (p->numbers.size() % 3 != 0) throw SyntaxError(p->line, "triples for '" + p->name + "'");
    out.reserve(p->numbers.size() / 3);
    for (std::size_t i = 0; i < p->numbers.size(); i += 3)
      out.push_back({p->numbers[i], p->numbers[i + 1], p->numbers[i + 2]});
    return out;
  }

  std::vector<uint32_t> get_indices(std::string_view name) const {
    std::vector<uint32_t> out;
    const Param *p = find(name);
    if (!p) return out;
    if (!p->numbers.empty()) throw SyntaxError(p->line, "integer indices");
    out.reserve(p->integers.size());
    for (int64_t i : p->integers) {
      if (i < 0 || i > int64_t(UINT32_MAX)) throw SyntaxError(p->line, "non-negative 32-bit index");
      out.push_back(uint32_t(i));
    }
    return out;
  }
};

struct GraphicsState {
  Affine3 ctm;
  int32_t material = -1;
  std::optional<Rgb> areaLight;
};

class Parser {
public:
  explicit Parser(std::filesystem::path basePath) : basePath_(std::move(basePath)) {}

  void parse(std::string_view src, int depth) {
    Tokenizer tok(src);
    for (;;) {
      const Token t = tok.next();
      if (t.kind == Token::Kind::End) break;
      if (t.kind != Token::Kind::Identifier) throw SyntaxError(t.line, "directive");
      directive(tok, t, depth);
    }
  }

  SceneDesc finish(int line) {
    if (!stack_.empty() || currentObject_) throw UnbalancedBlock(line);
    finalize_camera();
    return std::move(scene_);
  }

private:
  void directive(Tokenizer &tok, const Token &t, int depth) {
    const std::string_view d = t.text;
    if (d == "Include") {
      include(expect_string(tok), t.line, depth);
    } else if (d == "AttributeBegin" || d == "TransformBegin") {
      stack_.push_back({state_, d == "TransformBegin"});
    } else if (d == "AttributeEnd" || d == "TransformEnd") {
      if (stack_.empty() || stack_.back().transformOnly != (d == "TransformEnd")) throw UnbalancedBlock(t.line);
      if (stack_.back().transformOnly)
        state_.ctm = stack_.back().state.ctm;
      else
        state_ = stack_.back().state;
      stack_.pop_back();
    } else if (d == "ObjectBegin") {
      if (currentObject_) throw UnbalancedBlock(t.line);
      const std::string name = expect_string(tok);
      objectIndex_[name] = uint32_t(scene_.objects.size());
      scene_.objects.push_back({name, {}});
      currentObject_ = uint32_t(scene_.objects.size() - 1);
      stack_.push_back({state_, false});
      objectStackDepth_ = stack_.size();
    } else if (d == "ObjectEnd") {
      if (!currentObject_ || stack_.size() != objectStackDepth_) throw UnbalancedBlock(t.line);
      state_ = stack_.back().state;
      stack_.pop_back();
      currentObject_.reset();
    } else if (d == "ObjectInstance") {
      const std::string name = expect_string(tok);
      if (currentObject_) throw SyntaxError(t.line, "ObjectInstance outside ObjectBegin/ObjectEnd");
      const auto it = objectIndex_.find(name);
      if (it == objectIndex_.end()) throw SyntaxError(t.line, "defined object name, got '" + name + "'");
      scene_.instances.push_back({it->second, state_.ctm});
    } else if (d == "Translate") {
      const auto v = expect_floats(tok, 3);
      state_.ctm = state_.ctm * Affine3::translate({v[0], v[1], v[2]});
    } else if (d == "Scale") {
      const auto v = expect_floats(tok, 3);
      state_.ctm = state_.ctm * Affine3::scale({v[0], v[1], v[2]});
    } else if (d == "Rotate") {
      const auto v = expect_floats(tok, 4);
      state_.ctm = state_.ctm * Affine3::rotate(v[0], {v[1], v[2], v[3]});
    } else if (d == "Transform" || d == "ConcatTransform") {
      const Affine3 m = column_major(expect_array(tok, 16, t.line), t.line);
      state_.ctm = d == "Transform" ? m : state_.ctm * m;
    } else if (d == "LookAt") {
      const auto v = expect_floats(tok, 9);
      const bool fromIdentity = state_.ctm == Affine3::identity();
      state_.ctm = state_.ctm * look_at({v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}, t.line);
      if (fromIdentity)
        plainLookAt_ = PlainLookAt{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}, state_.ctm};
      else
        plainLookAt_.reset();
    } else if (d == "Camera") {
      const std::string type = expect_string(tok);
      const ParamList params = param_list(tok);
      if (type != "perspective") throw UnsupportedDirective("Camera \"" + type + "\"", t.line);
      if (std::abs(state_.ctm.determinant()) <= 1e-12) throw SyntaxError(t.line, "invertible camera transform");
      const Affine3 worldFromCamera = state_.ctm.inverse();
      CameraDesc &cam = scene_.camera;
      cam.position = worldFromCamera.point({0, 0, 0});
      cam.lookAt = cam.position + normalize(worldFromCamera.vector({0, 0, 1}));
      cam.up = normalize(worldFromCamera.vector({0, 1, 0}));
      // A camera placed by a single LookAt keeps the authored vectors.
      if (plainLookAt_ && plainLookAt_->ctm == state_.ctm) {
        cam.position = plainLookAt_->pos;
        cam.lookAt = plainLookAt_->look;
        cam.up = plainLookAt_->up;
      }
      cameraFov_ = params.get_float("fov", 90.f);
    } else if (d == "Film") {
      expect_string(tok);
      const ParamList params = param_list(tok);
      scene_.camera.filmWidth = uint32_t(params.get_float("xresolution", 1280.f));
      scene_.camera.filmHeight = uint32_t(params.get_float("yresolution", 720.f));
    } else if (d == "WorldBegin") {
      state_.ctm = Affine3::identity();
    } else if (d == "WorldEnd") {
      // nothing to flush
    } else if (d == "Shape") {
      shape(tok, t.line);
    } else if (d == "Material") {
      const std::string type = expect_string(tok);
      const ParamList params = param_list(tok);
      state_.material = add_material("", type, params, t.line);
    } else if (d == "MakeNamedMaterial") {
      const std::string name = expect_string(tok);
      const ParamList params = param_list(tok);
      const std::string type = params.get_string("type").value_or("");
      materialIndex_[name] = add_material(name, type, params, t.line);
    } else if (d == "NamedMaterial") {
      const std::string name = expect_string(tok);
      const auto it = materialIndex_.find(name);
      if (it == materialIndex_.end()) throw SyntaxError(t.line, "defined material name, got '" + name + "'");
      state_.material = it->second;
    } else if (d == "Texture") {
      const std::string name = expect_string(tok);
      const std::string type = expect_string(tok);
      const std::string cls = expect_string(tok);
      const ParamList params = param_list(tok);
      if (cls != "facetex") throw UnsupportedDirective("Texture \"" + cls + "\"", t.line);
      if (type != "color" && type != "spectrum") throw SyntaxError(t.line, "color texture");
      const auto file = params.get_string("filename");
      if (!file) throw SyntaxError(t.line, "\"string filename\"");
      textureIndex_[name] = int32_t(scene_.textures.size());
      scene_.textures.push_back({name, *file, uint32_t(params.get_float("channels", 3.f))});
    } else if (d == "LightSource") {
      const std::string type = expect_string(tok);
      const ParamList params = param_list(tok);
      if (type != "infinite") throw UnsupportedDirective("LightSource \"" + type + "\"", t.line);
      LightDesc light;
      light.kind = LightKind::Environment;
      light.radiance = params.get_rgb("L").value_or(Rgb{1.f});
      light.imagePath = params.get_string("mapname").value_or("");
      light.scale = params.get_float("scale", 1.f);
      scene_.lights.push_back(light);
    } else if (d == "AreaLightSource") {
      const std::string type = expect_string(tok);
      const ParamList params = param_list(tok);
      if (type != "diffuse") throw UnsupportedDirective("AreaLightSource \"" + type + "\"", t.line);
      state_.areaLight = params.get_rgb("L").value_or(Rgb{1.f});
    } else {
      throw UnsupportedDirective(std::string(d), t.line);
    }
  }

  void include(const std::string &file, int line, int depth) {
    if (depth + 1 >= kMaxIncludeDepth) throw SyntaxError(line, "include depth below 16");
    const std::filesystem::path path = basePath_ / file;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInclude(path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    includeBuffers_.push_back(std::move(text));
    parse(includeBuffers_.back(), depth + 1);
  }

  void shape(Tokenizer &tok, int line) {
    const std::string type = expect_string(tok);
    const ParamList params = param_list(tok);
    scene::Geometry geometry;
    if (type == "trianglemesh") {
      scene::TriangleMesh mesh;
      mesh.positions = params.get_points("P");
      mesh.indices = params.get_indices("indices");
      mesh.normals = params.get_points("N");
      if (mesh.indices.empty() && mesh.positions.size() == 3) mesh.indices = {0, 1, 2};
      if (mesh.indices.size() % 3 != 0) throw SyntaxError(line, "triangle indices in multiples of 3");
      if (!mesh.normals.empty() && mesh.normals.size() != mesh.positions.size())
        throw SyntaxError(line, "one normal per position");
      check_indices(mesh.indices, mesh.positions.size(), line);
      geometry = std::move(mesh);
    } else if (type == "quadmesh") {
      scene::QuadMesh mesh;
      mesh.positions = params.get_points("P");
      mesh.indices = params.get_indices("indices");
      if (mesh.indices.empty() && mesh.positions.size() == 4) mesh.indices = {0, 1, 2, 3};
      if (mesh.indices.size() % 4 != 0) throw SyntaxError(line, "quad indices in multiples of 4");
      check_indices(mesh.indices, mesh.positions.size(), line);
      geometry = std::move(mesh);
    } else if (type == "curve") {
      geometry = curve(params, line);
    } else {
      throw UnsupportedDirective("Shape \"" + type + "\"", line);
    }

    if (state_.areaLight) {
      area_lights(geometry, line);
      return;
    }

    bake(geometry, state_.ctm);
    const uint32_t material = resolve_material();
    if (currentObject_) {
      scene_.objects[*currentObject_].shapes.push_back({std::move(geometry), material});
    } else {
      scene_.objects.push_back({"", {{std::move(geometry), material}}});
      scene_.instances.push_back({uint32_t(scene_.objects.size() - 1), Affine3::identity()});
    }
  }

  // Standard form: 3k+1 control points sharing segment endpoints, widths from
  // width/width0/width1. Extended form ("integer segments" k): 4k independent
  // control points with optional per-control-point "float widths".
  scene::CurveSet curve(const ParamList &params, int line) {
    scene::CurveSet curves;
    const std::string style = params.get_string("type").value_or("flat");
    if (style == "flat" || style == "ribbon")
      curves.style = scene::CurveStyle::Flat;
    else if (style == "round" || style == "cylinder")
      curves.style = scene::CurveStyle::Round;
    else
      throw SyntaxError(line, "curve type \"flat\" or \"round\"");
    std::vector<Vec3f> cps = params.get_points("P");
    const float w = params.get_float("width", 1.f);
    const float w0 = params.get_float("width0", w);
    const float w1 = params.get_float("width1", w);

    if (const Param *seg = params.find("segments")) {
      if (seg->integers.size() != 1 || seg->integers[0] < 1 || cps.size() != std::size_t(seg->integers[0]) * 4)
        throw SyntaxError(line, "4 control points per declared curve segment");
      curves.controlPoints = std::move(cps);
      if (const Param *widths = params.find("widths")) {
        if (widths->numbers.size() != curves.controlPoints.size()) throw SyntaxError(line, "one width per control point");
        curves.widths = widths->numbers;
      } else {
        for (std::size_t i = 0; i < curves.controlPoints.size(); ++i)
          curves.widths.push_back(w0 + (w1 - w0) * float(i % 4) / 3.f);
      }
    } else {
      if (cps.size() < 4 || (cps.size() - 1) % 3 != 0) throw SyntaxError(line, "3k+1 curve control points");
      const std::size_t segments = (cps.size() - 1) / 3;
      const float denom = float(cps.size() - 1);
      for (std::size_t s = 0; s < segments; ++s) {
        for (std::size_t k = 0; k < 4; ++k) {
          const std::size_t i = s * 3 + k;
          curves.controlPoints.push_back(cps[i]);
          curves.widths.push_back(w0 + (w1 - w0) * (float(i) / denom));
        }
      }
    }
    for (float width : curves.widths)
      if (!(width > 0.f)) throw SyntaxError(line, "positive curve width");
    return curves;
  }

  void area_lights(scene::Geometry &geometry, int line) {
    scene::QuadMesh quads;
    if (auto *tri = std::get_if<scene::TriangleMesh>(&geometry)) {
      try {
        quads = merge_triangle_pairs(*tri);
      } catch (const NotPaired &) {
        throw SyntaxError(line, "quad-shaped area light geometry");
      }
    } else if (auto *q = std::get_if<scene::QuadMesh>(&geometry)) {
      quads = std::move(*q);
    } else {
      throw SyntaxError(line, "quad-shaped area light geometry");
    }
    for (std::size_t i = 0; i < quads.quad_count(); ++i) {
      LightDesc light;
      light.kind = LightKind::QuadArea;
      for (int k = 0; k < 4; ++k) light.corners[k] = state_.ctm.point(quads.positions[quads.indices[i * 4 + k]]);
      light.radiance = *state_.areaLight;
      scene_.lights.push_back(light);
    }
  }

  static void bake(scene::Geometry &geometry, const Affine3 &xf) {
    if (xf == Affine3::identity()) return;
    const Affine3 inv = xf.inverse();
    std::visit(
        [&](auto &g) {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, scene::CurveSet>) {
            for (auto &p : g.controlPoints) p = xf.point(p);
          } else {
            for (auto &p : g.positions) p = xf.point(p);
          }
          if constexpr (std::is_same_v<G, scene::TriangleMesh>) {
            for (auto &n : g.normals) n = normalize(inv.transpose_vector(n));
          }
        },
        geometry);
  }

  uint32_t resolve_material() {
    if (state_.material >= 0) return uint32_t(state_.material);
    if (defaultMaterial_ < 0) {
      defaultMaterial_ = int32_t(scene_.materials.size());
      DisneyMaterial m;
      m.name = "default";
      scene_.materials.push_back(m);
    }
    return uint32_t(defaultMaterial_);
  }

  int32_t add_material(const std::string &name, const std::string &type, const ParamList &p, int line) {
    if (type != "disney") throw UnsupportedDirective("Material \"" + type + "\"", line);
    DisneyMaterial m;
    m.name = name;
    if (const Param *color = p.find("color")) {
      if (color->type == "texture") {
        if (color->strings.empty()) throw SyntaxError(line, "texture name");
        const auto it = textureIndex_.find(color->strings.front());
        if (it == textureIndex_.end()) throw SyntaxError(line, "defined texture name, got '" + color->strings.front() + "'");
        m.textureRef = it->second;
        m.baseColor = Rgb{1.f};
      } else {
        m.baseColor = *p.get_rgb("color");
      }
    }
    m.metallic = p.get_float("metallic", m.metallic);
    m.roughness = p.get_float("roughness", m.roughness);
    m.specular = p.get_float("specular", m.specular);
    m.specularTint = p.get_float("speculartint", m.specularTint);
    m.sheen = p.get_float("sheen", m.sheen);
    m.sheenTint = p.get_float("sheentint", m.sheenTint);
    m.clearcoat = p.get_float("clearcoat", m.clearcoat);
    m.clearcoatGloss = p.get_float("clearcoatgloss", m.clearcoatGloss);
    m.ior = p.get_float("eta", m.ior);
    m.dielectric = p.get_float("spectrans", 0.f) > 0.f;
    scene_.materials.push_back(m);
    return int32_t(scene_.materials.size() - 1);
  }

  void finalize_camera() {
    CameraDesc &cam = scene_.camera;
    if (cam.filmWidth > 0 && cam.filmHeight > 0) cam.aspect = float(cam.filmWidth) / float(cam.filmHeight);
    if (!cameraFov_) return;
    // The fov applies to the shorter image axis.
    const double fov = double(*cameraFov_) * 3.14159265358979323846 / 180.0;
    if (cam.aspect >= 1.f)
      cam.fovY = *cameraFov_;
    else
      cam.fovY = float(2.0 * std::atan(std::tan(fov / 2.0) / cam.aspect) * 180.0 / 3.14159265358979323846);
  }

  static void check_indices(const std::vector<uint32_t> &indices, std::size_t count, int line) {
    for (uint32_t i : indices)
      if (i >= count) throw SyntaxError(line, "vertex index below " + std::to_string(count));
  }

  static Affine3 column_major(const std::vector<float> &v, int line) {
    Affine3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = v[c * 4 + r];
    if (v[3] != 0.f || v[7] != 0.f || v[11] != 0.f || v[15] != 1.f) throw SyntaxError(line, "affine transform");
    return m;
  }

  struct PlainLookAt {
    Vec3f pos, look, up;
    Affine3 ctm;
  };
  std::optional<PlainLookAt> plainLookAt_;

  static Affine3 look_at(const Vec3f &pos, const Vec3f &look, const Vec3f &up, int line) {
    const Vec3f dir = normalize(look - pos);
    const Vec3f rightRaw = cross(normalize(up), dir);
    if (length(rightRaw) == 0.f) throw SyntaxError(line, "up vector not parallel to view direction");
    const Vec3f right = normalize(rightRaw);
    const Vec3f newUp = cross(dir, right);
    Affine3 worldFromCamera;
    for (int r = 0; r < 3; ++r) {
      worldFromCamera(r, 0) = right[r];
      worldFromCamera(r, 1) = newUp[r];
      worldFromCamera(r, 2) = dir[r];
      worldFromCamera(r, 3) = pos[r];
    }
    return worldFromCamera.inverse();
  }

  static std::string expect_string(Tokenizer &tok) {
    const Token t = tok.next();
    if (t.kind != Token::Kind::String) throw SyntaxError(t.line, "quoted string");
    return std::string(t.text);
  }

  static std::vector<float> expect_floats(Tokenizer &tok, std::size_t n) {
    std::vector<float> out;
    for (std::size_t i = 0; i < n; ++i) {
      const Token t = tok.next();
      if (t.kind != Token::Kind::Number) throw SyntaxError(t.line, "number");
      out.push_back(parse_float(t));
    }
    return out;
  }

  static std::vector<float> expect_array(Tokenizer &tok, std::size_t n, int line) {
    const bool bracketed = tok.peek().kind == Token::Kind::OpenBracket;
    if (bracketed) tok.next();
    std::vector<float> out = expect_floats(tok, n);
    if (bracketed && tok.next().kind != Token::Kind::CloseBracket) throw SyntaxError(line, "]");
    return out;
  }

  static ParamList param_list(Tokenizer &tok) {
    ParamList list;
    while (tok.peek().kind == Token::Kind::String) {
      const Token decl = tok.next();
      Param p;
      p.line = decl.line;
      const std::string_view text = decl.text;
      const std::size_t b = text.find_first_not_of(' ');
      const std::size_t sp = text.find(' ', b);
      if (b == std::string_view::npos || sp == std::string_view::npos) throw SyntaxError(decl.line, "\"type name\" parameter");
      p.type = std::string(text.substr(b, sp - b));
      const std::size_t nb = text.find_first_not_of(' ', sp);
      if (nb == std::string_view::npos) throw SyntaxError(decl.line, "parameter name");
      p.name = std::string(text.substr(nb, text.find_last_not_of(' ') + 1 - nb));
      const bool isString = p.type == "string" || p.type == "texture" || p.type == "bool";
      auto value = [&](const Token &v) {
        if (isString) {
          if (v.kind != Token::Kind::String && !(p.type == "bool" && v.kind == Token::Kind::Identifier))
            throw SyntaxError(v.line, "string value for '" + p.name + "'");
          p.strings.emplace_back(v.text);
        } else {
          if (v.kind != Token::Kind::Number) throw SyntaxError(v.line, "numeric value for '" + p.name + "'");
          if (p.type == "integer")
            p.integers.push_back(parse_int(v));
          else
            p.numbers.push_back(parse_float(v));
        }
      };
      if (tok.peek().kind == Token::Kind::OpenBracket) {
        tok.next();
        for (;;) {
          const Token v = tok.next();
          if (v.kind == Token::Kind::CloseBracket) break;
          if (v.kind == Token::Kind::End) throw SyntaxError(v.line, "]");
          value(v);
        }
      } else {
        value(tok.next());
      }
      list.params.push_back(std::move(p));
    }
    return list;
  }

  struct StackEntry {
    GraphicsState state;
    bool transformOnly;
  };

  std::filesystem::path basePath_;
  SceneDesc scene_;
  GraphicsState state_;
  std::vector<StackEntry> stack_;
  std::optional<uint32_t> currentObject_;
  std::size_t objectStackDepth_ = 0;
  std::unordered_map<std::string, uint32_t> objectIndex_;
  std::unordered_map<std::string, int32_t> materialIndex_;
  std::unordered_map<std::string, int32_t> textureIndex_;
  int32_t defaultMaterial_ = -1;
  std::optional<float> cameraFov_;
  std::vector<std::string> includeBuffers_;
};

} // namespace

SceneDesc parse_pbrt(std::string_view source, const std::filesystem::path &basePath) {
  Parser parser(basePath);
  parser.parse(source, 0);
  const int lastLine = int(std::count(source.begin(), source.end(), '\n')) + 1;
  return parser.finish(lastLine);
}

SceneDesc parse_pbrt(std::istream &source, const std::filesystem::path &basePath) {
  std::string text((std::istreambuf_iterator<char>(source)), std::istreambuf_iterator<char>());
  return parse_pbrt(std::string_view(text), basePath);
}

SceneDesc parse_pbrt_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInclude(path.string());
  return parse_pbrt(in, path.parent_path());
}

} // namespace elephant::ingest

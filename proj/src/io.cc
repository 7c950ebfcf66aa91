#include "lifedit/io.h"

#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "lifedit/errors.h"
#include "lifedit/sh.h"

namespace lifedit {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("failed writing '" + path.string() + "'");
}

namespace {

[[noreturn]] void format_error_at(const std::string& what, std::size_t offset) {
  std::ostringstream msg;
  msg << what << " at byte offset " << offset;
  throw FormatError(msg.str());
}

std::uint32_t load_u32_le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint32_t load_u32_be(const unsigned char* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | static_cast<std::uint32_t>(p[3]);
}

void append_u32_le(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

std::uint32_t float_bits(float f) {
  std::uint32_t u;
  std::memcpy(&u, &f, sizeof u);
  return u;
}

float bits_float(std::uint32_t u) {
  float f;
  std::memcpy(&f, &u, sizeof f);
  return f;
}

// Reads one whitespace-delimited header token starting at pos.
std::string header_token(const std::string& bytes, std::size_t& pos) {
  while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  if (start == pos) format_error_at("truncated PFM header", start);
  return bytes.substr(start, pos - start);
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

}  // namespace

// ---------------------------------------------------------------------------
// PFM

ImageRGB decode_pfm(const std::string& bytes) {
  std::size_t pos = 0;
  const std::string magic = header_token(bytes, pos);
  if (magic == "Pf") format_error_at("grayscale PFM is not supported (RGB only)", 0);
  if (magic != "PF") format_error_at("bad PFM magic '" + magic + "'", 0);
  std::size_t at = pos;
  int width = 0, height = 0;
  if (!parse_number(header_token(bytes, pos), width) || width < 1) {
    format_error_at("bad PFM width", at);
  }
  at = pos;
  if (!parse_number(header_token(bytes, pos), height) || height < 1) {
    format_error_at("bad PFM height", at);
  }
  at = pos;
  double scale = 0.0;
  if (!parse_number(header_token(bytes, pos), scale) || scale == 0.0 || !std::isfinite(scale)) {
    format_error_at("bad PFM scale", at);
  }
  // Exactly one whitespace byte separates the header from the payload.
  if (pos >= bytes.size()) format_error_at("truncated PFM header", pos);
  ++pos;

  const bool little = scale < 0.0;
  const std::size_t count = static_cast<std::size_t>(width) * height * 3;
  if (bytes.size() - pos < count * 4) {
    format_error_at("truncated PFM payload (expected " + std::to_string(count * 4) + " bytes)",
                    bytes.size());
  }
  ImageRGB image(width, height);
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  for (int row = 0; row < height; ++row) {
    const int y = height - 1 - row;
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) {
        const std::size_t offset =
            pos + ((static_cast<std::size_t>(row) * width + x) * 3 + c) * 4;
        const std::uint32_t u =
            little ? load_u32_le(data + offset) : load_u32_be(data + offset);
        const float v = bits_float(u);
        if (!std::isfinite(v)) format_error_at("non-finite PFM value", offset);
        image(x, y)[c] = v;
      }
    }
  }
  return image;
}

std::string encode_pfm(const ImageRGB& image) {
  if (!image.all_finite()) throw FormatError("refusing to write non-finite pixels to PFM");
  std::string out = "PF\n" + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n-1.0\n";
  out.reserve(out.size() + image.pixel_count() * 12);
  for (int row = 0; row < image.height(); ++row) {
    const int y = image.height() - 1 - row;
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < 3; ++c) append_u32_le(out, float_bits(image(x, y)[c]));
    }
  }
  return out;
}

ImageRGB read_pfm(const fs::path& path) {
  try {
    return decode_pfm(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_pfm(const fs::path& path, const ImageRGB& image) {
  write_file(path, encode_pfm(image));
}

// ---------------------------------------------------------------------------
// LIF

namespace {
constexpr char kLifMagic[4] = {'L', 'I', 'F', '1'};
constexpr std::size_t kLifRecordBytes = 1 + 4 * 3 * kShCoeffCount;
}  // namespace

std::string encode_lif(const LifTexture& lif) {
  std::string out(kLifMagic, 4);
  append_u32_le(out, static_cast<std::uint32_t>(lif.resolution()));
  append_u32_le(out, static_cast<std::uint32_t>(kShOrder));
  out.reserve(12 + lif.texel_count() * kLifRecordBytes);
  for (int t = 0; t < lif.texel_count(); ++t) {
    const bool valid = lif.valid(t);
    out.push_back(valid ? 1 : 0);
    const ShTriplef& c = lif.coeffs(t);
    for (int ch = 0; ch < 3; ++ch) {
      for (int i = 0; i < kShCoeffCount; ++i) {
        append_u32_le(out, float_bits(valid ? c(i, ch) : 0.0f));
      }
    }
  }
  return out;
}

LifTexture decode_lif(const std::string& bytes) {
  if (bytes.size() < 12) format_error_at("truncated LIF header", bytes.size());
  if (std::memcmp(bytes.data(), kLifMagic, 4) != 0) format_error_at("bad LIF magic", 0);
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::uint32_t res = load_u32_le(data + 4);
  const std::uint32_t order = load_u32_le(data + 8);
  if (order != static_cast<std::uint32_t>(kShOrder)) {
    format_error_at("unsupported LIF SH order " + std::to_string(order), 8);
  }
  if (res < 4 || res > 65536) format_error_at("bad LIF resolution " + std::to_string(res), 4);
  const std::size_t expected = 12 + static_cast<std::size_t>(res) * res * kLifRecordBytes;
  if (bytes.size() != expected) {
    format_error_at("LIF size mismatch (expected " + std::to_string(expected) + " bytes, got " +
                        std::to_string(bytes.size()) + ")",
                    std::min(bytes.size(), expected));
  }
  LifTexture lif(static_cast<int>(res));
  std::size_t pos = 12;
  for (int t = 0; t < lif.texel_count(); ++t) {
    const unsigned char flag = data[pos];
    if (flag > 1) format_error_at("bad LIF validity byte", pos);
    ++pos;
    ShTriplef c;
    for (int ch = 0; ch < 3; ++ch) {
      for (int i = 0; i < kShCoeffCount; ++i) {
        const float v = bits_float(load_u32_le(data + pos));
        if (!std::isfinite(v)) format_error_at("non-finite LIF coefficient", pos);
        c(i, ch) = v;
        pos += 4;
      }
    }
    if (flag) lif.set(t, c);
  }
  return lif;
}

LifTexture read_lif(const fs::path& path) {
  try {
    return decode_lif(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_lif(const fs::path& path, const LifTexture& lif) { write_file(path, encode_lif(lif)); }

// ---------------------------------------------------------------------------
// OBJ

namespace {

[[noreturn]] void obj_error(int line, const std::string& what) {
  throw FormatError("OBJ line " + std::to_string(line) + ": " + what);
}

int resolve_obj_index(std::string_view text, std::size_t count, int line) {
  long idx = 0;
  if (!parse_number(text, idx) || idx == 0) obj_error(line, "bad index '" + std::string(text) + "'");
  const long resolved = idx > 0 ? idx - 1 : static_cast<long>(count) + idx;
  if (resolved < 0 || resolved >= static_cast<long>(count)) {
    obj_error(line, "index " + std::string(text) + " out of range");
  }
  return static_cast<int>(resolved);
}

std::vector<double> parse_reals(std::istringstream& ss, int line, std::size_t min_count) {
  std::vector<double> values;
  std::string tok;
  while (ss >> tok) {
    double v;
    if (!parse_number(std::string_view(tok), v)) obj_error(line, "bad number '" + tok + "'");
    values.push_back(v);
  }
  if (values.size() < min_count) obj_error(line, "too few components");
  return values;
}

}  // namespace

TriangleMesh parse_obj(std::istream& in) {
  std::vector<Vec3> positions, normals;
  std::vector<Vec2> uvs;
  // Corner key: position, uv (-1 if none), normal (-1 if none).
  using Corner = std::tuple<int, int, int>;
  std::map<Corner, int> vertex_of;
  std::vector<Corner> corners;
  std::vector<std::array<int, 3>> triangles;
  bool warned_mtl = false;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ss(raw);
    std::string tag;
    if (!(ss >> tag)) continue;
    if (tag == "v") {
      const auto v = parse_reals(ss, line_no, 3);
      positions.emplace_back(v[0], v[1], v[2]);
    } else if (tag == "vt") {
      const auto v = parse_reals(ss, line_no, 2);
      uvs.emplace_back(v[0], v[1]);
    } else if (tag == "vn") {
      const auto v = parse_reals(ss, line_no, 3);
      normals.emplace_back(v[0], v[1], v[2]);
    } else if (tag == "f") {
      std::vector<int> face;
      std::string tok;
      while (ss >> tok) {
        std::vector<std::string_view> parts;
        const std::string_view view(tok);
        for (std::size_t start = 0;;) {
          const std::size_t slash = view.find('/', start);
          parts.push_back(view.substr(start, slash == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : slash - start));
          if (slash == std::string_view::npos) break;
          start = slash + 1;
        }
        if (parts.size() > 3) obj_error(line_no, "bad face corner '" + tok + "'");
        const std::size_t n_parts = parts.size();
        const int p = resolve_obj_index(parts[0], positions.size(), line_no);
        const int t = n_parts >= 2 && !parts[1].empty()
                          ? resolve_obj_index(parts[1], uvs.size(), line_no)
                          : -1;
        const int n = n_parts >= 3 && !parts[2].empty()
                          ? resolve_obj_index(parts[2], normals.size(), line_no)
                          : -1;
        const Corner key{p, t, n};
        auto [it, inserted] = vertex_of.emplace(key, static_cast<int>(corners.size()));
        if (inserted) corners.push_back(key);
        face.push_back(it->second);
      }
      if (face.size() < 3) obj_error(line_no, "face with fewer than 3 vertices");
      for (std::size_t k = 1; k + 1 < face.size(); ++k) {
        triangles.push_back({face[0], face[k], face[k + 1]});
      }
    } else if (tag == "mtllib" || tag == "usemtl") {
      if (!warned_mtl) log_warning("OBJ material statements are ignored");
      warned_mtl = true;
    }
    // o, g, s, l, p and other statements carry nothing we use.
  }
  if (triangles.empty()) throw FormatError("OBJ file contains no faces");

  TriangleMesh mesh;
  mesh.triangles = std::move(triangles);
  const std::size_t nv = corners.size();
  mesh.positions.resize(nv);
  mesh.normals.resize(nv);

  bool all_uv = true, any_uv = false, all_normals = true;
  for (const auto& [p, t, n] : corners) {
    all_uv &= t >= 0;
    any_uv |= t >= 0;
    all_normals &= n >= 0;
  }
  if (any_uv && !all_uv) log_warning("OBJ has texture coordinates on some corners only; UVs dropped");

  // Area-weighted normals per position, used where a corner has none.
  std::vector<Vec3> area_normals;
  if (!all_normals) {
    area_normals.assign(positions.size(), Vec3::Zero());
    for (const auto& tri : mesh.triangles) {
      const Vec3& a = positions[std::get<0>(corners[tri[0]])];
      const Vec3& b = positions[std::get<0>(corners[tri[1]])];
      const Vec3& c = positions[std::get<0>(corners[tri[2]])];
      const Vec3 face_normal = (b - a).cross(c - a);  // length = 2 * area
      for (int k = 0; k < 3; ++k) area_normals[std::get<0>(corners[tri[k]])] += face_normal;
    }
  }

  if (all_uv) mesh.uvs.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const auto& [p, t, n] = corners[v];
    mesh.positions[v] = positions[p];
    if (all_uv) mesh.uvs[v] = uvs[t];
    Vec3 normal = n >= 0 ? normals[n] : area_normals[p];
    if (!(normal.norm() > 0.0)) normal = Vec3::UnitZ();
    // Unit input normals are kept bit for bit so that write/read round-trips.
    if (std::abs(normal.squaredNorm() - 1.0) > 1e-12) normal.normalize();
    mesh.normals[v] = normal;
  }
  return mesh;
}

TriangleMesh read_obj(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "' for reading");
  try {
    return parse_obj(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string format_obj(const TriangleMesh& mesh) {
  // Vertices are renumbered by first use, matching the order parse_obj
  // assigns, so formatting a parsed file reproduces it byte for byte.
  std::vector<int> order, slot(mesh.positions.size(), -1);
  for (const auto& tri : mesh.triangles) {
    for (int v : tri) {
      if (slot[v] < 0) {
        slot[v] = static_cast<int>(order.size());
        order.push_back(v);
      }
    }
  }
  std::ostringstream out;
  out.precision(17);
  for (int v : order) {
    const Vec3& p = mesh.positions[v];
    out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  }
  if (mesh.has_uvs()) {
    for (int v : order) out << "vt " << mesh.uvs[v].x() << ' ' << mesh.uvs[v].y() << '\n';
  }
  for (int v : order) {
    const Vec3& n = mesh.normals[v];
    out << "vn " << n.x() << ' ' << n.y() << ' ' << n.z() << '\n';
  }
  for (const auto& tri : mesh.triangles) {
    out << 'f';
    for (int v : tri) {
      const int k = slot[v] + 1;
      if (mesh.has_uvs()) {
        out << ' ' << k << '/' << k << '/' << k;
      } else {
        out << ' ' << k << "//" << k;
      }
    }
    out << '\n';
  }
  return out.str();
}

void write_obj(const fs::path& path, const TriangleMesh& mesh) { write_file(path, format_obj(mesh)); }

// ---------------------------------------------------------------------------
// Scene description

Camera CameraDescription::to_camera() const {
  return Camera::look_at(position, look_at, up, fov, width, height);
}

CameraDescription CameraDescription::from_camera(const Camera& cam) {
  CameraDescription d;
  d.position = cam.position();
  d.look_at = cam.target();
  d.up = cam.up();
  d.fov = cam.fov_y_degrees();
  d.width = cam.width();
  d.height = cam.height();
  return d;
}

fs::path SceneDescription::resolve(const std::string& p) const {
  const fs::path path(p);
  return path.is_absolute() ? path : base_dir / path;
}

namespace {

[[noreturn]] void scene_error(int line, const std::string& what) {
  throw FormatError("scene line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T scalar_value(const std::string& key, const std::string& value, int line) {
  T out{};
  if (!parse_number(std::string_view(value), out)) {
    scene_error(line, "bad value '" + value + "' for key '" + key + "'");
  }
  return out;
}

Vec3 vec3_value(const std::string& key, const std::string& value, int line) {
  std::istringstream ss(value);
  std::array<std::string, 3> tok;
  std::string extra;
  if (!(ss >> tok[0] >> tok[1] >> tok[2]) || (ss >> extra)) {
    scene_error(line, "key '" + key + "' needs three numbers");
  }
  return {scalar_value<double>(key, tok[0], line), scalar_value<double>(key, tok[1], line),
          scalar_value<double>(key, tok[2], line)};
}

std::string format_real(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

std::string format_vec3(const Vec3& v) {
  return format_real(v.x()) + " " + format_real(v.y()) + " " + format_real(v.z());
}

}  // namespace

SceneDescription parse_scene_description(std::istream& in, const fs::path& base_dir) {
  SceneDescription desc;
  desc.base_dir = base_dir;
  enum class Section { kNone, kScene, kMaterial, kCamera } section = Section::kNone;
  bool seen_material = false;
  std::set<std::string> keys;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') scene_error(line_no, "malformed section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      keys.clear();
      if (name == "scene") {
        if (desc.has_scene_block) scene_error(line_no, "duplicate [scene] section");
        desc.has_scene_block = true;
        section = Section::kScene;
      } else if (name == "material") {
        if (seen_material) scene_error(line_no, "duplicate [material] section");
        seen_material = true;
        section = Section::kMaterial;
      } else if (name == "camera") {
        desc.cameras.emplace_back();
        section = Section::kCamera;
      } else {
        scene_error(line_no, "unknown section [" + name + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) scene_error(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section == Section::kNone) scene_error(line_no, "key '" + key + "' outside a section");
    if (value.empty()) scene_error(line_no, "empty value for key '" + key + "'");
    if (!keys.insert(key).second) scene_error(line_no, "duplicate key '" + key + "'");

    switch (section) {
      case Section::kScene:
        if (key == "mesh") {
          desc.mesh = value;
        } else if (key == "envmap") {
          desc.envmap = value;
        } else if (key == "seed") {
          desc.seed = scalar_value<std::uint64_t>(key, value, line_no);
        } else if (key == "spp") {
          desc.spp = scalar_value<int>(key, value, line_no);
        } else if (key == "lif_resolution") {
          desc.lif_resolution = scalar_value<int>(key, value, line_no);
        } else {
          scene_error(line_no, "unknown key '" + key + "' in [scene]");
        }
        break;
      case Section::kMaterial: {
        MaterialDescription& m = desc.material;
        if (key == "kind") {
          m.kind = value;
        } else if (key == "albedo") {
          m.albedo = value;
        } else if (key == "albedo_rgb") {
          m.albedo_rgb = vec3_value(key, value, line_no);
        } else if (key == "alpha") {
          m.alpha = scalar_value<double>(key, value, line_no);
        } else if (key == "tint") {
          m.tint = vec3_value(key, value, line_no);
        } else if (key == "bump") {
          m.bump = value;
        } else if (key == "bump_strength") {
          m.bump_strength = scalar_value<double>(key, value, line_no);
        } else {
          scene_error(line_no, "unknown key '" + key + "' in [material]");
        }
        break;
      }
      case Section::kCamera: {
        CameraDescription& c = desc.cameras.back();
        if (key == "position") {
          c.position = vec3_value(key, value, line_no);
        } else if (key == "look_at") {
          c.look_at = vec3_value(key, value, line_no);
        } else if (key == "up") {
          c.up = vec3_value(key, value, line_no);
        } else if (key == "fov") {
          c.fov = scalar_value<double>(key, value, line_no);
        } else if (key == "width") {
          c.width = scalar_value<int>(key, value, line_no);
        } else if (key == "height") {
          c.height = scalar_value<int>(key, value, line_no);
        } else {
          scene_error(line_no, "unknown key '" + key + "' in [camera]");
        }
        break;
      }
      case Section::kNone:
        break;
    }
  }
  if (desc.material.albedo && desc.material.albedo_rgb) {
    throw FormatError("material sets both 'albedo' and 'albedo_rgb'");
  }
  return desc;
}

SceneDescription read_scene_description(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open scene file '" + path.string() + "'");
  try {
    return parse_scene_description(in, path.parent_path());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string format_scene_description(const SceneDescription& desc, const fs::path& target_dir) {
  auto rel = [&](const std::string& p) {
    const fs::path resolved = desc.resolve(p);
    if (fs::path(p).is_absolute()) return resolved.generic_string();
    return fs::absolute(resolved)
        .lexically_normal()
        .lexically_proximate(fs::absolute(target_dir).lexically_normal())
        .generic_string();
  };

  std::ostringstream out;
  if (desc.has_scene_block) {
    out << "[scene]\n";
    out << "mesh = " << rel(desc.mesh) << "\n";
    out << "envmap = " << rel(desc.envmap) << "\n";
    out << "seed = " << desc.seed << "\n";
    out << "spp = " << desc.spp << "\n";
    out << "lif_resolution = " << desc.lif_resolution << "\n\n";
    const MaterialDescription& m = desc.material;
    out << "[material]\n";
    out << "kind = " << m.kind << "\n";
    if (m.albedo) out << "albedo = " << rel(*m.albedo) << "\n";
    if (m.albedo_rgb) out << "albedo_rgb = " << format_vec3(*m.albedo_rgb) << "\n";
    out << "alpha = " << format_real(m.alpha) << "\n";
    out << "tint = " << format_vec3(m.tint) << "\n";
    if (m.bump) {
      out << "bump = " << rel(*m.bump) << "\n";
      out << "bump_strength = " << format_real(m.bump_strength) << "\n";
    }
    out << "\n";
  }
  for (const CameraDescription& c : desc.cameras) {
    out << "[camera]\n";
    out << "position = " << format_vec3(c.position) << "\n";
    out << "look_at = " << format_vec3(c.look_at) << "\n";
    out << "up = " << format_vec3(c.up) << "\n";
    out << "fov = " << format_real(c.fov) << "\n";
    out << "width = " << c.width << "\n";
    out << "height = " << c.height << "\n\n";
  }
  return out.str();
}

void write_scene_description(const fs::path& path, const SceneDescription& desc) {
  fs::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  write_file(path, format_scene_description(desc, dir));
}

namespace {

fs::path existing(const SceneDescription& desc, const std::string& p, const char* what) {
  if (p.empty()) throw FormatError(std::string("scene does not name a ") + what);
  const fs::path path = desc.resolve(p);
  if (!fs::exists(path)) {
    throw FormatError(std::string(what) + " file '" + path.string() + "' does not exist");
  }
  return path;
}

}  // namespace

Material load_material(const SceneDescription& desc) {
  const MaterialDescription& md = desc.material;
  Material m;
  m.kind = parse_material_kind(md.kind);
  if (md.albedo) {
    m.albedo = Texture(read_pfm(existing(desc, *md.albedo, "albedo")));
  } else if (md.albedo_rgb) {
    m.albedo = Texture::constant(*md.albedo_rgb);
  }
  m.alpha = md.alpha;
  m.tint = md.tint;
  if (md.bump) {
    m.bump = BumpMap{Texture(read_pfm(existing(desc, *md.bump, "bump"))), md.bump_strength};
  }
  m.validate();
  return m;
}

std::vector<Camera> load_cameras(const SceneDescription& desc) {
  std::vector<Camera> cams;
  cams.reserve(desc.cameras.size());
  for (const CameraDescription& c : desc.cameras) cams.push_back(c.to_camera());
  return cams;
}

Scene load_scene(const SceneDescription& desc) {
  if (!desc.has_scene_block) throw FormatError("scene file has no [scene] section");
  if (desc.spp < 1) throw InputError("scene spp must be >= 1");
  if (desc.lif_resolution < 4) throw InputError("scene lif_resolution must be >= 4");
  Scene scene;
  TriangleMesh mesh = read_obj(existing(desc, desc.mesh, "mesh"));
  scene.geometry = std::make_shared<const AcceleratedGeometry>(std::move(mesh));
  scene.environment = EnvironmentMap(read_pfm(existing(desc, desc.envmap, "envmap")));
  scene.material = load_material(desc);
  scene.cameras = load_cameras(desc);
  scene.seed = desc.seed;
  scene.spp = desc.spp;
  scene.lif_resolution = desc.lif_resolution;
  return scene;
}

Scene load_scene(const fs::path& path) { return load_scene(read_scene_description(path)); }

}  // namespace lifedit

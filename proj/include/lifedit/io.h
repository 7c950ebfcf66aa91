#ifndef LIFEDIT_IO_H_
#define LIFEDIT_IO_H_

// File formats. All readers throw FormatError with a byte offset or line
// number; writers throw FormatError when the file cannot be written.
//
// PFM: "PF\n<width> <height>\n<scale>\n" followed by height rows, bottom row
//   first, of width * 3 float32. A negative scale means little-endian. Only
//   RGB ("PF") is accepted. Written files use scale -1.
//
// LIF: "LIF1", uint32 resolution, uint32 SH order (= 4), then resolution^2
//   texel records in texel order (j * resolution + i): one validity byte and
//   75 float32 (25 red, 25 green, 25 blue, flat SH index l(l+1)+m). All
//   integers and floats are little-endian. Invalid texels store zeros.
//
// OBJ: v / vt / vn / f with v, v/vt, v/vt/vn and v//vn corners, negative
//   indices, fan triangulation of polygons. Missing normals are replaced by
//   area-weighted vertex normals; the mesh is UV-less unless every corner has
//   a texture coordinate.
//
// Scene: see SceneDescription below.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lifedit/camera.h"
#include "lifedit/geometry.h"
#include "lifedit/image.h"
#include "lifedit/lighting.h"
#include "lifedit/scene.h"

namespace lifedit {

namespace fs = std::filesystem;

ImageRGB read_pfm(const fs::path& path);
ImageRGB decode_pfm(const std::string& bytes);
void write_pfm(const fs::path& path, const ImageRGB& image);
std::string encode_pfm(const ImageRGB& image);

TriangleMesh read_obj(const fs::path& path);
TriangleMesh parse_obj(std::istream& in);
std::string format_obj(const TriangleMesh& mesh);
void write_obj(const fs::path& path, const TriangleMesh& mesh);

LifTexture read_lif(const fs::path& path);
LifTexture decode_lif(const std::string& bytes);
void write_lif(const fs::path& path, const LifTexture& lif);
std::string encode_lif(const LifTexture& lif);

// Line-oriented scene file:
//
//   # comment                    ('#' starts a comment anywhere on a line)
//   [scene]                      at most once
//   mesh = proxy.obj             required, relative to the scene file
//   envmap = sky.pfm             required
//   seed = 7                     default 0
//   spp = 256                    default 256
//   lif_resolution = 256         default 256
//   [material]                   at most once; defaults to white diffuse
//   kind = diffuse               diffuse | rough-conductor
//   albedo = albedo.pfm          texture, or
//   albedo_rgb = 0.8 0.2 0.2     constant albedo
//   alpha = 1.0                  rough-conductor roughness
//   tint = 1 1 1                 rough-conductor reflectance
//   bump = height.pfm            optional height map
//   bump_strength = 0.5
//   [camera]                     repeatable, in view order
//   position = 0 2 6
//   look_at = 0 1 0
//   up = 0 1 0                   default 0 1 0
//   fov = 40                     vertical, degrees
//   width = 256
//   height = 256
//
// Sections may appear in any order. Unknown keys, duplicate keys and keys
// outside a section are errors.
struct CameraDescription {
  Vec3 position = Vec3::Zero();
  Vec3 look_at = -Vec3::UnitZ();
  Vec3 up = Vec3::UnitY();
  double fov = 45.0;
  int width = 256;
  int height = 256;

  Camera to_camera() const;
  static CameraDescription from_camera(const Camera& cam);
};

struct MaterialDescription {
  std::string kind = "diffuse";
  std::optional<std::string> albedo;
  std::optional<Rgb> albedo_rgb;
  double alpha = 1.0;
  Rgb tint = Rgb::Ones();
  std::optional<std::string> bump;
  double bump_strength = 0.0;
};

struct SceneDescription {
  bool has_scene_block = false;
  std::string mesh;
  std::string envmap;
  std::uint64_t seed = 0;
  int spp = 256;
  int lif_resolution = 256;
  MaterialDescription material;
  std::vector<CameraDescription> cameras;
  // Directory that relative paths are resolved against.
  fs::path base_dir;

  fs::path resolve(const std::string& p) const;
};

SceneDescription parse_scene_description(std::istream& in, const fs::path& base_dir);
SceneDescription read_scene_description(const fs::path& path);

// Paths are rewritten relative to the directory of the destination file.
void write_scene_description(const fs::path& path, const SceneDescription& desc);
std::string format_scene_description(const SceneDescription& desc, const fs::path& target_dir);

Material load_material(const SceneDescription& desc);
std::vector<Camera> load_cameras(const SceneDescription& desc);

// Loads mesh, environment map, material textures and cameras. Requires a
// [scene] block and existing files.
Scene load_scene(const SceneDescription& desc);
Scene load_scene(const fs::path& path);

std::string read_file(const fs::path& path);
void write_file(const fs::path& path, const std::string& bytes);

}  // namespace lifedit

#endif  // LIFEDIT_IO_H_

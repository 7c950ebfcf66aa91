#include "lifedit/viewset.h"

#include <cstdio>
#include <regex>
#include <set>

#include "lifedit/errors.h"
#include "lifedit/io.h"

namespace lifedit {

namespace {

std::string numbered(const char* prefix, int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%04d.pfm", prefix, index);
  return buf;
}

std::set<int> indices_with_prefix(const std::filesystem::path& dir, const std::string& prefix) {
  const std::regex pattern(prefix + "_([0-9]{4})\\.pfm");
  std::set<int> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, pattern)) out.insert(std::stoi(m[1].str()));
  }
  return out;
}

}  // namespace

std::string view_file_name(int index) { return numbered("view", index); }
std::string mask_file_name(int index) { return numbered("mask", index); }

ViewSet make_viewset(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw FormatError("view directory " + dir.string() + " does not exist");
  }
  const SceneDescription desc = read_scene_description(dir / "cameras.scene");
  const int count = static_cast<int>(desc.cameras.size());
  if (count == 0) throw InputError(dir.string() + "/cameras.scene lists no cameras");

  const std::set<int> views = indices_with_prefix(dir, "view");
  const std::set<int> masks = indices_with_prefix(dir, "mask");
  for (int k = 0; k < count; ++k) {
    if (!views.count(k)) throw InputError("view set: missing " + view_file_name(k) + " (index " + std::to_string(k) + ")");
    if (!masks.count(k)) throw InputError("view set: missing " + mask_file_name(k) + " (index " + std::to_string(k) + ")");
  }
  for (int k : views) {
    if (k >= count) throw InputError("view set: " + view_file_name(k) + " (index " + std::to_string(k) + ") has no camera");
  }
  for (int k : masks) {
    if (k >= count) throw InputError("view set: " + mask_file_name(k) + " (index " + std::to_string(k) + ") has no camera");
  }

  const std::vector<Camera> cameras = load_cameras(desc);
  ViewSet out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    View v{read_pfm(dir / view_file_name(k)), read_pfm(dir / mask_file_name(k)), cameras[k]};
    const int w = v.camera.width(), h = v.camera.height();
    if (v.image.width() != w || v.image.height() != h || v.mask.width() != w || v.mask.height() != h) {
      throw InputError("view set: index " + std::to_string(k) + " has image " +
                       std::to_string(v.image.width()) + "x" + std::to_string(v.image.height()) +
                       ", mask " + std::to_string(v.mask.width()) + "x" +
                       std::to_string(v.mask.height()) + " and camera " + std::to_string(w) + "x" +
                       std::to_string(h));
    }
    out.push_back(std::move(v));
  }
  validate_views(out);
  return out;
}

void write_viewset(const std::filesystem::path& dir, const ViewSet& views) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw FormatError("cannot create directory " + dir.string() + ": " + ec.message());
  SceneDescription desc;
  desc.base_dir = dir;
  for (std::size_t k = 0; k < views.size(); ++k) {
    write_pfm(dir / view_file_name(static_cast<int>(k)), views[k].image);
    write_pfm(dir / mask_file_name(static_cast<int>(k)), views[k].mask);
    desc.cameras.push_back(CameraDescription::from_camera(views[k].camera));
  }
  write_scene_description(dir / "cameras.scene", desc);
}

}  // namespace lifedit

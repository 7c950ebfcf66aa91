#include "lifedit/demo_scene.h"

#include <cmath>

#include "lifedit/errors.h"
#include "lifedit/io.h"
#include "lifedit/latlong.h"

namespace lifedit {

namespace {

void append_plane(TriangleMesh& mesh, double half, const Vec2& uv_lo, const Vec2& uv_hi) {
  const int base = static_cast<int>(mesh.positions.size());
  const Vec3 corners[4] = {{-half, 0, half}, {half, 0, half}, {half, 0, -half}, {-half, 0, -half}};
  const Vec2 uvs[4] = {uv_lo, {uv_hi.x(), uv_lo.y()}, uv_hi, {uv_lo.x(), uv_hi.y()}};
  for (int k = 0; k < 4; ++k) {
    mesh.positions.push_back(corners[k]);
    mesh.normals.push_back(Vec3::UnitY());
    mesh.uvs.push_back(uvs[k]);
  }
  mesh.triangles.push_back({base, base + 1, base + 2});
  mesh.triangles.push_back({base, base + 2, base + 3});
}

}  // namespace

TriangleMesh make_plane(double half_size) {
  if (!(half_size > 0.0)) throw InputError("plane half size must be > 0");
  TriangleMesh mesh;
  append_plane(mesh, half_size, Vec2(0, 0), Vec2(1, 1));
  return mesh;
}

TriangleMesh make_sphere_on_plane(int segments, int rings, double plane_half_size) {
  if (segments < 3 || rings < 2) throw InputError("sphere needs >= 3 segments and >= 2 rings");
  TriangleMesh mesh;
  append_plane(mesh, plane_half_size, Vec2(0.26, 0.01), Vec2(0.74, 0.49));

  const Vec3 centre(0.0, 1.0, 0.0);
  const Vec2 lo(0.01, 0.51), hi(0.99, 0.99);
  const int base = static_cast<int>(mesh.positions.size());
  // Seam and pole vertices are duplicated so every chart corner has its own UV.
  for (int r = 0; r <= rings; ++r) {
    const double theta = kPi * r / rings;  // 0 at the north pole
    for (int s = 0; s <= segments; ++s) {
      const double phi = 2.0 * kPi * s / segments;
      const Vec3 n(std::sin(theta) * std::sin(phi), std::cos(theta), std::sin(theta) * std::cos(phi));
      mesh.positions.push_back(centre + n);
      mesh.normals.push_back(n);
      mesh.uvs.emplace_back(lo.x() + (hi.x() - lo.x()) * s / segments,
                            hi.y() - (hi.y() - lo.y()) * r / rings);
    }
  }
  const int stride = segments + 1;
  for (int r = 0; r < rings; ++r) {
    for (int s = 0; s < segments; ++s) {
      const int a = base + r * stride + s;
      const int b = a + stride;
      // Counter-clockwise seen from outside.
      if (r > 0) mesh.triangles.push_back({a, b, a + 1});
      if (r < rings - 1) mesh.triangles.push_back({a + 1, b, b + 1});
    }
  }
  return mesh;
}

ImageRGB make_sky(int width, int height, SkyVariant variant) {
  if (width < 2 || height < 2) throw InputError("sky image must be at least 2x2");
  Vec3 sun;
  Rgb sun_colour, zenith, horizon;
  if (variant == SkyVariant::kMorning) {
    sun = Vec3(0.6, 0.7, 0.4).normalized();
    sun_colour = Rgb(1.4, 1.2, 0.9);
    zenith = Rgb(0.25, 0.4, 0.75);
    horizon = Rgb(0.65, 0.7, 0.75);
  } else {
    sun = Vec3(-0.7, 0.45, -0.3).normalized();
    sun_colour = Rgb(1.5, 0.8, 0.4);
    zenith = Rgb(0.2, 0.2, 0.45);
    horizon = Rgb(0.7, 0.5, 0.35);
  }
  const Rgb ground(0.2, 0.18, 0.16);
  ImageRGB img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Vec3 d = latlong_to_direction(Vec2((x + 0.5) / width, (y + 0.5) / height));
      const double up = d.y();
      Rgb c = up >= 0.0 ? Rgb(horizon + (zenith - horizon) * up)
                        : Rgb(horizon + (ground - horizon) * std::min(1.0, -4.0 * up));
      const double lobe = std::max(0.0, d.dot(sun));
      c += sun_colour * (lobe * lobe * lobe);
      img(x, y) = c.cast<float>();
    }
  }
  return img;
}

Texture checker_texture(int resolution, int cells, const Rgb& a, const Rgb& b) {
  if (resolution < 1 || cells < 1) throw InputError("checker needs positive resolution and cells");
  Texture t(ImageRGB(resolution, resolution));
  for (int j = 0; j < resolution; ++j) {
    for (int i = 0; i < resolution; ++i) {
      const int ci = i * cells / resolution;
      const int cj = j * cells / resolution;
      t.set_texel(i, j, (ci + cj) % 2 == 0 ? a : b);
    }
  }
  return t;
}

Texture ramp_texture(int resolution) {
  if (resolution < 2) throw InputError("ramp needs resolution >= 2");
  Texture t(ImageRGB(resolution, resolution));
  for (int j = 0; j < resolution; ++j) {
    for (int i = 0; i < resolution; ++i) {
      t.set_texel(i, j, Rgb::Constant((i + 0.5) / resolution));
    }
  }
  return t;
}

std::vector<Camera> orbit_cameras(int count, double radius, double height, const Vec3& target,
                                  double fov, int width, int height_px, double phase) {
  std::vector<Camera> cams;
  for (int k = 0; k < count; ++k) {
    const double a = phase + 2.0 * kPi * k / count;
    const Vec3 pos(radius * std::sin(a), height, radius * std::cos(a));
    cams.push_back(Camera::look_at(pos, target, Vec3::UnitY(), fov, width, height_px));
  }
  return cams;
}

Scene make_demo_scene(const Rgb& albedo, int view_count, int image_size) {
  Scene scene;
  scene.geometry = std::make_shared<const AcceleratedGeometry>(make_sphere_on_plane());
  scene.environment = EnvironmentMap(make_sky(128, 64));
  scene.material = Material::diffuse(Texture::constant(albedo));
  scene.cameras = orbit_cameras(view_count, 4.5, 2.6, Vec3(0, 0.7, 0), 45.0, image_size, image_size);
  return scene;
}

void write_demo_scene(const std::filesystem::path& dir, int view_count, int image_size,
                      std::uint64_t seed, int spp, int lif_resolution) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw FormatError("cannot create directory " + dir.string() + ": " + ec.message());

  write_obj(dir / "mesh.obj", make_sphere_on_plane());
  write_pfm(dir / "sky.pfm", make_sky(128, 64));

  SceneDescription desc;
  desc.has_scene_block = true;
  desc.base_dir = dir;
  desc.mesh = "mesh.obj";
  desc.envmap = "sky.pfm";
  desc.seed = seed;
  desc.spp = spp;
  desc.lif_resolution = lif_resolution;
  desc.material.albedo_rgb = Rgb(0.8, 0.15, 0.1);
  for (const Camera& c :
       orbit_cameras(view_count, 4.5, 2.6, Vec3(0, 0.7, 0), 45.0, image_size, image_size)) {
    desc.cameras.push_back(CameraDescription::from_camera(c));
  }
  write_scene_description(dir / "demo.scene", desc);
}

}  // namespace lifedit

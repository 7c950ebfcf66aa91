#ifndef LIFEDIT_DEMO_SCENE_H_
#define LIFEDIT_DEMO_SCENE_H_

// Procedural scenes used by tests, scripts and `lifedit demo-scene`.

#include <filesystem>
#include <vector>

#include "lifedit/camera.h"
#include "lifedit/geometry.h"
#include "lifedit/image.h"
#include "lifedit/lighting.h"
#include "lifedit/scene.h"

namespace lifedit {

// Axis-aligned square in the y = 0 plane, normal +y, UVs covering [0, 1]^2
// with u along +x and v along -z.
TriangleMesh make_plane(double half_size);

// Unit sphere resting on a square ground plane. UV atlas: the ground plane
// fills [0.26, 0.74] x [0.01, 0.49], the sphere is a lat-long chart over
// [0.01, 0.99] x [0.51, 0.99] with v increasing towards the north pole.
TriangleMesh make_sphere_on_plane(int segments = 64, int rings = 32, double plane_half_size = 4.0);

enum class SkyVariant { kMorning, kEvening };

// Smooth sky: a zenith-to-horizon gradient, a darker ground and a broad sun
// lobe. The two variants differ in sun direction and colour.
ImageRGB make_sky(int width, int height, SkyVariant variant = SkyVariant::kMorning);

Texture checker_texture(int resolution, int cells, const Rgb& a, const Rgb& b);

// Height map increasing linearly with u, from 0 to 1.
Texture ramp_texture(int resolution);

// Cameras on a circle of the given radius and height looking at `target`,
// starting at angle `phase` (radians) from +z.
std::vector<Camera> orbit_cameras(int count, double radius, double height, const Vec3& target,
                                  double fov, int width, int height_px, double phase = 0.0);

// Sphere-on-plane with the morning sky, a constant diffuse albedo and
// `view_count` orbit cameras.
Scene make_demo_scene(const Rgb& albedo, int view_count, int image_size);

// Writes mesh.obj, sky.pfm and demo.scene into `dir`.
void write_demo_scene(const std::filesystem::path& dir, int view_count, int image_size,
                      std::uint64_t seed, int spp, int lif_resolution);

}  // namespace lifedit

#endif  // LIFEDIT_DEMO_SCENE_H_

#include "lifedit/render.h"

#include <limits>
#include <sstream>

#include "lifedit/errors.h"
#include "lifedit/material.h"
#include "lifedit/parallel.h"
#include "lifedit/random.h"

namespace lifedit {

namespace {

template <typename Shade>
ImageRGB render_pixels(const Camera& cam, Shade&& shade) {
  ImageRGB image(cam.width(), cam.height());
  const std::size_t w = static_cast<std::size_t>(cam.width());
  parallel_for(image.pixel_count(), [&](std::size_t idx) {
    const int x = static_cast<int>(idx % w);
    const int y = static_cast<int>(idx / w);
    const Rgb value = shade(x, y, idx);
    if (!value.allFinite()) {
      std::ostringstream msg;
      msg << "non-finite radiance at pixel (" << x << ", " << y << ")";
      throw NumericalError(msg.str());
    }
    image(x, y) = value.cast<float>();
  });
  return image;
}

}  // namespace

ImageRGB render_reference(const Scene& scene, const Camera& cam, int spp, std::uint64_t seed) {
  if (spp < 1) throw InputError("render_reference: spp must be >= 1");
  const AcceleratedGeometry& geom = scene.geom();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  return render_pixels(cam, [&](int x, int y, std::size_t idx) -> Rgb {
    const Ray ray = cam.pixel_ray(x, y);
    const auto hit = geom.intersect(ray);
    if (!hit) return scene.environment.lookup(ray.dir);

    const Vec3 n = shading_normal(scene.material, *hit);
    const PointBrdf brdf = resolve_brdf(scene.material, hit->uv);
    const Vec3 wo = -ray.dir;
    const Frame frame = Frame::from_normal(n);
    Sampler rng(seed, idx);
    Rgb sum = Rgb::Zero();
    for (int s = 0; s < spp; ++s) {
      const double u1 = rng.uniform();
      const double u2 = rng.uniform();
      const Vec3 local = uniform_hemisphere(u1, u2);
      if (local.z() <= 0.0) continue;
      const Vec3 wi = frame.to_world(local);
      // A bumped normal must not gather light from below the surface itself.
      if (wi.dot(hit->shading_normal) <= 0.0) continue;
      const Rgb f = brdf.eval(n, wo, wi);
      if ((f.array() == 0.0).all()) continue;
      if (geom.occluded(hit->point, wi, kInf)) continue;
      // pdf = 1 / (2 pi)
      sum += f.cwiseProduct(scene.environment.lookup(wi)) * (local.z() * 2.0 * kPi);
    }
    return sum / spp;
  });
}

ImageRGB render_sh(const Scene& scene, const Camera& cam, const LifTexture& lif,
                   int n_brdf_samples, std::uint64_t seed) {
  if (n_brdf_samples < 1) throw InputError("render_sh: n_brdf_samples must be >= 1");
  const AcceleratedGeometry& geom = scene.geom();
  return render_pixels(cam, [&](int x, int y, std::size_t idx) -> Rgb {
    const Ray ray = cam.pixel_ray(x, y);
    const auto hit = geom.intersect(ray);
    if (!hit) return scene.environment.lookup(ray.dir);
    const ShTripled brdf = project_brdf_slice(scene.material, *hit, -ray.dir, n_brdf_samples,
                                              derive_seed(seed, idx));
    return sh_dot(brdf, lif_sample(lif, hit->uv));
  });
}

ImageRGB render_mask(const Scene& scene, const Camera& cam) {
  const AcceleratedGeometry& geom = scene.geom();
  return render_pixels(cam, [&](int x, int y, std::size_t) -> Rgb {
    return geom.intersect(cam.pixel_ray(x, y)) ? Rgb::Ones() : Rgb::Zero();
  });
}

}  // namespace lifedit

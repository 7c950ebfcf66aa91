#ifndef LIFEDIT_LIGHTING_H_
#define LIFEDIT_LIGHTING_H_

#include <cstdint>
#include <vector>

#include "lifedit/image.h"
#include "lifedit/sh.h"
#include "lifedit/types.h"

namespace lifedit {

struct Scene;

// Distant lat-long radiance map (see latlong.h for the mapping).
class EnvironmentMap {
 public:
  EnvironmentMap() : EnvironmentMap(ImageRGB(1, 1)) {}
  // Throws InputError for negative or non-finite radiance.
  explicit EnvironmentMap(ImageRGB image);

  static EnvironmentMap constant(const Rgb& radiance);

  const ImageRGB& image() const { return image_; }

  // Bilinear, wrapping in u and clamping in v.
  Rgb lookup(const Vec3& d) const;

  EnvironmentMap scaled(double s) const;

 private:
  ImageRGB image_;
};

inline Rgb envmap_lookup(const EnvironmentMap& e, const Vec3& d) { return e.lookup(d); }

// Per-texel SH coefficients of the local irradiance function over the UV
// square, using the texel layout of texel_surface_samples.
class LifTexture {
 public:
  explicit LifTexture(int resolution);

  int resolution() const { return resolution_; }
  int texel_count() const { return resolution_ * resolution_; }
  int valid_count() const;

  bool valid(int texel) const { return valid_[texel] != 0; }
  const ShTriplef& coeffs(int texel) const { return coeffs_[texel]; }

  // Marks the texel valid. Throws NumericalError for non-finite values.
  void set(int texel, const ShTriplef& value);
  void set(int texel, const ShTripled& value) { set(texel, ShTriplef(value.cast<float>())); }
  void invalidate(int texel);

  friend bool operator==(const LifTexture& a, const LifTexture& b);

 private:
  int resolution_;
  std::vector<ShTriplef> coeffs_;
  std::vector<std::uint8_t> valid_;
};

// Bilinear interpolation over valid texels with the weights of invalid ones
// redistributed; falls back to the nearest valid texel when the whole
// neighbourhood is invalid. Throws InputError if no texel is valid.
ShTripled lif_sample(const LifTexture& t, const Vec2& uv);

enum class Visibility { kTraced, kIgnored };

// T(p, w) = L_e(w) V(p, w) max(w.n, 0).
Rgb lif_eval(const Scene& scene, const Vec3& p, const Vec3& n, const Vec3& w,
             Visibility visibility = Visibility::kTraced);

ShTripled bake_lif_point(const Scene& scene, const Vec3& p, const Vec3& n, int n_samples,
                         std::uint64_t seed, Visibility visibility = Visibility::kTraced);

// Bakes every texel covered by the mesh UV layout, seeded per texel by
// derive_seed(seed, texel). With Visibility::kIgnored this is the unshadowed
// prior used by fit_lif. Throws InputError when no texel is covered.
LifTexture bake_lif_texture(const Scene& scene, int resolution, int n_samples, std::uint64_t seed,
                            Visibility visibility = Visibility::kTraced);

}  // namespace lifedit

#endif  // LIFEDIT_LIGHTING_H_

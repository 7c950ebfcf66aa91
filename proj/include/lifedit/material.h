#ifndef LIFEDIT_MATERIAL_H_
#define LIFEDIT_MATERIAL_H_

#include <cstdint>
#include <optional>
#include <string_view>

#include "lifedit/geometry.h"
#include "lifedit/image.h"
#include "lifedit/sh.h"
#include "lifedit/types.h"

namespace lifedit {

enum class MaterialKind { kDiffuse, kRoughConductor };

std::string_view to_string(MaterialKind kind);
MaterialKind parse_material_kind(std::string_view name);

struct BumpMap {
  Texture height;
  double strength = 0.0;
};

struct Material {
  MaterialKind kind = MaterialKind::kDiffuse;
  Texture albedo;     // diffuse reflectance, values in [0, 1]
  double alpha = 1.0; // GGX roughness in (0, 1]
  Rgb tint = Rgb::Ones();  // conductor reflectance, replaces Fresnel
  std::optional<BumpMap> bump;

  static Material diffuse(Texture albedo);
  static Material rough_conductor(double alpha, const Rgb& tint = Rgb::Ones());

  bool has_bump() const { return bump.has_value() && bump->strength != 0.0; }

  // Throws InputError when a parameter is outside its documented range.
  void validate() const;
};

// BRDF with textures already looked up at one surface point.
struct PointBrdf {
  MaterialKind kind = MaterialKind::kDiffuse;
  Rgb albedo = Rgb::Ones();
  double alpha = 1.0;
  Rgb tint = Rgb::Ones();

  Rgb eval(const Vec3& n, const Vec3& wo, const Vec3& wi) const;
};

PointBrdf resolve_brdf(const Material& m, const Vec2& uv);

// f_r(wo, wi) about normal n. Diffuse: albedo / pi when wi is above the
// horizon. Rough conductor: tint * D * G2 / (4 |n.wo| |n.wi|) with the GGX
// distribution and height-correlated Smith masking; zero unless both
// directions are above the horizon.
Rgb eval_brdf(const Material& m, const Vec2& uv, const Vec3& n, const Vec3& wo, const Vec3& wi);

double ggx_distribution(double cos_h, double alpha);
double ggx_smith_lambda(double cos_theta, double alpha);

// Interpolated normal, tilted by the bump map gradient when one is set.
Vec3 shading_normal(const Material& m, const HitRecord& hit);

// Lower bound on the unbumped cosine in the bump compensation ratio.
inline constexpr double kBumpCosineClamp = 1e-2;

// SH projection of wi -> f_r(n', wo, wi) * rho(wi), one column per channel,
// where n' is the (possibly bumped) shading normal and
// rho = max(wi.n', 0) / max(wi.n, kBumpCosineClamp) moves the cosine from the
// unbumped normal n (baked into the LIF) to n'. rho = 1 without a bump.
ShTripled project_brdf_slice(const Material& m, const HitRecord& hit, const Vec3& wo,
                             int n_samples, std::uint64_t seed);

}  // namespace lifedit

#endif  // LIFEDIT_MATERIAL_H_

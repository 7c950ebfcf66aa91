#include "lifedit/material.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "lifedit/errors.h"

namespace lifedit {

std::string_view to_string(MaterialKind kind) {
  switch (kind) {
    case MaterialKind::kDiffuse:
      return "diffuse";
    case MaterialKind::kRoughConductor:
      return "rough-conductor";
  }
  return "unknown";
}

MaterialKind parse_material_kind(std::string_view name) {
  if (name == "diffuse") return MaterialKind::kDiffuse;
  if (name == "rough-conductor") return MaterialKind::kRoughConductor;
  throw InputError("unknown material kind '" + std::string(name) + "'");
}

Material Material::diffuse(Texture albedo) {
  Material m;
  m.kind = MaterialKind::kDiffuse;
  m.albedo = std::move(albedo);
  return m;
}

Material Material::rough_conductor(double alpha, const Rgb& tint) {
  Material m;
  m.kind = MaterialKind::kRoughConductor;
  m.alpha = alpha;
  m.tint = tint;
  return m;
}

void Material::validate() const {
  if (kind == MaterialKind::kDiffuse) {
    if (albedo.min_value() < 0.0 || albedo.max_value() > 1.0) {
      throw InputError("albedo values must lie in [0, 1]");
    }
  } else {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("roughness alpha must lie in (0, 1]");
    if ((tint.array() < 0.0).any() || (tint.array() > 1.0).any()) {
      throw InputError("conductor tint must lie in [0, 1]");
    }
  }
  if (bump && !std::isfinite(bump->strength)) throw InputError("bump strength must be finite");
  if (bump && bump->strength < 0.0) throw InputError("bump strength must be >= 0");
}

double ggx_distribution(double cos_h, double alpha) {
  if (cos_h <= 0.0) return 0.0;
  const double a2 = alpha * alpha;
  const double d = cos_h * cos_h * (a2 - 1.0) + 1.0;
  return a2 / (kPi * d * d);
}

double ggx_smith_lambda(double cos_theta, double alpha) {
  const double c2 = cos_theta * cos_theta;
  const double tan2 = std::max(0.0, 1.0 - c2) / c2;
  return 0.5 * (std::sqrt(1.0 + alpha * alpha * tan2) - 1.0);
}

Rgb PointBrdf::eval(const Vec3& n, const Vec3& wo, const Vec3& wi) const {
  const double cos_i = n.dot(wi);
  if (cos_i <= 0.0) return Rgb::Zero();
  if (kind == MaterialKind::kDiffuse) return albedo * kInvPi;

  const double cos_o = n.dot(wo);
  if (cos_o <= 0.0) return Rgb::Zero();
  const Vec3 h = (wo + wi).normalized();
  const double d = ggx_distribution(n.dot(h), alpha);
  const double g = 1.0 / (1.0 + ggx_smith_lambda(cos_o, alpha) + ggx_smith_lambda(cos_i, alpha));
  return tint * (d * g / (4.0 * cos_o * cos_i));
}

PointBrdf resolve_brdf(const Material& m, const Vec2& uv) {
  PointBrdf b;
  b.kind = m.kind;
  if (m.kind == MaterialKind::kDiffuse) {
    b.albedo = m.albedo.sample(uv);
  } else {
    b.alpha = m.alpha;
    b.tint = m.tint;
  }
  return b;
}

Rgb eval_brdf(const Material& m, const Vec2& uv, const Vec3& n, const Vec3& wo, const Vec3& wi) {
  return resolve_brdf(m, uv).eval(n, wo, wi);
}

namespace {

double height_at(const Texture& t, const Vec2& uv) { return t.sample(uv).mean(); }

}  // namespace

Vec3 shading_normal(const Material& m, const HitRecord& hit) {
  const Vec3& n = hit.shading_normal;
  if (!m.has_bump()) return n;

  Vec3 tangent = hit.dpdu - n * n.dot(hit.dpdu);
  if (!hit.has_uv_frame || tangent.norm() < 1e-12) {
    static std::once_flag once;
    std::call_once(once, [] {
      log_warning("degenerate tangent frame; bump map ignored at affected points");
    });
    return n;
  }
  tangent.normalize();
  Vec3 bitangent = n.cross(tangent);
  if (bitangent.dot(hit.dpdv) < 0.0) bitangent = -bitangent;

  const Texture& h = m.bump->height;
  const double du = 1.0 / h.width();
  const double dv = 1.0 / h.height();
  const Vec2& uv = hit.uv;
  const double dh_du =
      (height_at(h, uv + Vec2(du, 0.0)) - height_at(h, uv - Vec2(du, 0.0))) / (2.0 * du);
  const double dh_dv =
      (height_at(h, uv + Vec2(0.0, dv)) - height_at(h, uv - Vec2(0.0, dv))) / (2.0 * dv);
  return (n - m.bump->strength * (dh_du * tangent + dh_dv * bitangent)).normalized();
}

ShTripled project_brdf_slice(const Material& m, const HitRecord& hit, const Vec3& wo,
                             int n_samples, std::uint64_t seed) {
  const PointBrdf brdf = resolve_brdf(m, hit.uv);
  const Vec3 n = hit.shading_normal;
  if (!m.has_bump()) {
    return project_mc([&](const Vec3& wi) { return brdf.eval(n, wo, wi); }, n_samples, seed);
  }
  const Vec3 nb = shading_normal(m, hit);
  return project_mc(
      [&](const Vec3& wi) -> Rgb {
        const double cos_b = nb.dot(wi);
        if (cos_b <= 0.0) return Rgb::Zero();
        const double rho = cos_b / std::max(n.dot(wi), kBumpCosineClamp);
        return brdf.eval(nb, wo, wi) * rho;
      },
      n_samples, seed);
}

}  // namespace lifedit

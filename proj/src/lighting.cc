#include "lifedit/lighting.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lifedit/errors.h"
#include "lifedit/geometry.h"
#include "lifedit/latlong.h"
#include "lifedit/parallel.h"
#include "lifedit/random.h"
#include "lifedit/scene.h"

namespace lifedit {

EnvironmentMap::EnvironmentMap(ImageRGB image) : image_(std::move(image)) {
  for (const Pixel& p : image_.pixels()) {
    if (!p.allFinite() || (p.array() < 0.0f).any()) {
      throw InputError("environment map radiance must be finite and >= 0");
    }
  }
}

EnvironmentMap EnvironmentMap::constant(const Rgb& radiance) {
  return EnvironmentMap(ImageRGB(1, 1, radiance.cast<float>()));
}

Rgb EnvironmentMap::lookup(const Vec3& d) const {
  const int w = image_.width();
  const int h = image_.height();
  const Vec2 uv = direction_to_latlong(d);
  const double x = uv.x() * w - 0.5;
  const double y = uv.y() * h - 0.5;
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const double tx = x - fx;
  const double ty = y - fy;
  auto wrap = [w](int i) { return ((i % w) + w) % w; };
  const int x0 = wrap(static_cast<int>(fx));
  const int x1 = wrap(static_cast<int>(fx) + 1);
  const int y0 = std::clamp(static_cast<int>(fy), 0, h - 1);
  const int y1 = std::clamp(static_cast<int>(fy) + 1, 0, h - 1);
  const Rgb top = (1 - tx) * image_(x0, y0).cast<double>() + tx * image_(x1, y0).cast<double>();
  const Rgb bottom =
      (1 - tx) * image_(x0, y1).cast<double>() + tx * image_(x1, y1).cast<double>();
  return (1 - ty) * top + ty * bottom;
}

EnvironmentMap EnvironmentMap::scaled(double s) const {
  ImageRGB out = image_;
  for (Pixel& p : out.pixels()) p *= static_cast<float>(s);
  return EnvironmentMap(std::move(out));
}

LifTexture::LifTexture(int resolution) : resolution_(resolution) {
  if (resolution < 4) throw InputError("LIF resolution must be >= 4");
  const std::size_t n = static_cast<std::size_t>(resolution) * resolution;
  coeffs_.assign(n, ShTriplef::Zero());
  valid_.assign(n, 0);
}

int LifTexture::valid_count() const {
  return static_cast<int>(std::count(valid_.begin(), valid_.end(), std::uint8_t{1}));
}

void LifTexture::set(int texel, const ShTriplef& value) {
  if (!value.allFinite()) {
    std::ostringstream msg;
    msg << "non-finite LIF coefficients at texel " << texel;
    throw NumericalError(msg.str());
  }
  coeffs_[texel] = value;
  valid_[texel] = 1;
}

void LifTexture::invalidate(int texel) {
  coeffs_[texel].setZero();
  valid_[texel] = 0;
}

bool operator==(const LifTexture& a, const LifTexture& b) {
  return a.resolution_ == b.resolution_ && a.valid_ == b.valid_ && a.coeffs_ == b.coeffs_;
}

namespace {

int nearest_valid_texel(const LifTexture& t, double x, double y) {
  const int res = t.resolution();
  const int ci = std::clamp(static_cast<int>(std::lround(x)), 0, res - 1);
  const int cj = std::clamp(static_cast<int>(std::lround(y)), 0, res - 1);
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  // Expanding square rings; stop once a ring cannot beat the best distance.
  for (int r = 0; r < res; ++r) {
    if (best >= 0 && (r - 1) * (r - 1) > best_d2) break;
    for (int j = cj - r; j <= cj + r; ++j) {
      if (j < 0 || j >= res) continue;
      const bool edge_row = (j == cj - r || j == cj + r);
      for (int i = ci - r; i <= ci + r; i += edge_row ? 1 : 2 * r) {
        if (i >= 0 && i < res) {
          const int texel = j * res + i;
          if (t.valid(texel)) {
            const double d2 = (i - x) * (i - x) + (j - y) * (j - y);
            if (d2 < best_d2 || (d2 == best_d2 && texel < best)) {
              best_d2 = d2;
              best = texel;
            }
          }
        }
        if (r == 0) break;
      }
    }
  }
  return best;
}

}  // namespace

ShTripled lif_sample(const LifTexture& t, const Vec2& uv) {
  const int res = t.resolution();
  const double x = uv.x() * res - 0.5;
  const double y = uv.y() * res - 0.5;
  // Snap to texel centres so that exact-centre lookups return the texel itself
  // despite rounding in uv * res.
  auto split = [](double c, int& cell, double& frac) {
    double f = std::floor(c);
    frac = c - f;
    if (frac > 1.0 - 1e-9) {
      f += 1.0;
      frac = 0.0;
    } else if (frac < 1e-9) {
      frac = 0.0;
    }
    cell = static_cast<int>(f);
  };
  int i0, j0;
  double tx, ty;
  split(x, i0, tx);
  split(y, j0, ty);

  ShTripled acc = ShTripled::Zero();
  double total = 0.0;
  const double weights[4] = {(1 - tx) * (1 - ty), tx * (1 - ty), (1 - tx) * ty, tx * ty};
  const int di[4] = {0, 1, 0, 1};
  const int dj[4] = {0, 0, 1, 1};
  for (int k = 0; k < 4; ++k) {
    if (weights[k] == 0.0) continue;
    const int i = std::clamp(i0 + di[k], 0, res - 1);
    const int j = std::clamp(j0 + dj[k], 0, res - 1);
    const int texel = j * res + i;
    if (!t.valid(texel)) continue;
    acc += weights[k] * t.coeffs(texel).cast<double>();
    total += weights[k];
  }
  if (total > 0.0) return total == 1.0 ? acc : ShTripled(acc / total);

  const int nearest = nearest_valid_texel(t, x, y);
  if (nearest < 0) throw InputError("LIF texture has no valid texels");
  return t.coeffs(nearest).cast<double>();
}

Rgb lif_eval(const Scene& scene, const Vec3& p, const Vec3& n, const Vec3& w,
             Visibility visibility) {
  const double cos_theta = w.dot(n);
  if (cos_theta <= 0.0) return Rgb::Zero();
  if (visibility == Visibility::kTraced &&
      scene.geom().occluded(p, w, std::numeric_limits<double>::infinity())) {
    return Rgb::Zero();
  }
  return scene.environment.lookup(w) * cos_theta;
}

ShTripled bake_lif_point(const Scene& scene, const Vec3& p, const Vec3& n, int n_samples,
                         std::uint64_t seed, Visibility visibility) {
  return project_mc([&](const Vec3& w) { return lif_eval(scene, p, n, w, visibility); },
                    n_samples, seed);
}

LifTexture bake_lif_texture(const Scene& scene, int resolution, int n_samples, std::uint64_t seed,
                            Visibility visibility) {
  const std::vector<TexelSample> samples =
      texel_surface_samples(scene.geom().mesh(), resolution);
  if (samples.empty()) throw InputError("mesh UV layout covers no texel centre");
  LifTexture lif(resolution);
  parallel_for(samples.size(), [&](std::size_t k) {
    const TexelSample& s = samples[k];
    lif.set(s.texel, bake_lif_point(scene, s.point, s.normal, n_samples,
                                    derive_seed(seed, static_cast<std::uint64_t>(s.texel)),
                                    visibility));
  });
  return lif;
}

}  // namespace lifedit

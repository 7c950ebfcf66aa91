#ifndef LIFEDIT_LATLONG_H_
#define LIFEDIT_LATLONG_H_

#include <algorithm>
#include <cmath>

#include "lifedit/types.h"

namespace lifedit {

// Equirectangular mapping shared by environment maps and SH visualisation:
//   u = 0.5 + atan2(d.x, -d.z) / (2 pi),   v = acos(d.y) / pi.
// +y is up and maps to v = 0 (the top image row); -z maps to u = 0.5.
inline Vec2 direction_to_latlong(const Vec3& d) {
  const double u = 0.5 + std::atan2(d.x(), -d.z()) / (2.0 * kPi);
  const double v = std::acos(std::clamp(d.y(), -1.0, 1.0)) / kPi;
  return {u, v};
}

inline Vec3 latlong_to_direction(const Vec2& uv) {
  const double phi = (uv.x() - 0.5) * 2.0 * kPi;
  const double theta = uv.y() * kPi;
  const double sin_theta = std::sin(theta);
  return {sin_theta * std::sin(phi), std::cos(theta), -sin_theta * std::cos(phi)};
}

}  // namespace lifedit

#endif  // LIFEDIT_LATLONG_H_

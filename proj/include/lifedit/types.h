#ifndef LIFEDIT_TYPES_H_
#define LIFEDIT_TYPES_H_

#include <cmath>

#include <Eigen/Core>

namespace lifedit {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Linear RGB radiance or reflectance.
using Rgb = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInvPi = 1.0 / kPi;

// Tolerance on |d| - 1 for anything documented as a unit direction.
inline constexpr double kUnitTolerance = 1e-6;

inline bool is_unit(const Vec3& d, double tol = kUnitTolerance) {
  return std::abs(d.norm() - 1.0) <= tol;
}

// Right-handed orthonormal frame with `n` as the third axis.
struct Frame {
  Vec3 s, t, n;

  static Frame from_normal(const Vec3& n) {
    // Duff et al. branchless construction.
    const double sign = std::copysign(1.0, n.z());
    const double a = -1.0 / (sign + n.z());
    const double b = n.x() * n.y() * a;
    return {Vec3(1.0 + sign * n.x() * n.x() * a, sign * b, -sign * n.x()),
            Vec3(b, sign + n.y() * n.y() * a, -n.y()), n};
  }

  Vec3 to_world(const Vec3& local) const {
    return s * local.x() + t * local.y() + n * local.z();
  }
};

}  // namespace lifedit

#endif  // LIFEDIT_TYPES_H_

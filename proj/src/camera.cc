#include "lifedit/camera.h"

#include <cmath>

#include "lifedit/errors.h"

namespace lifedit {

Camera Camera::look_at(const Vec3& position, const Vec3& target, const Vec3& up,
                       double fov_y_degrees, int width, int height) {
  if (!(fov_y_degrees > 1.0 && fov_y_degrees < 179.0)) {
    throw InputError("camera fov must lie in (1, 179) degrees");
  }
  if (width < 1 || height < 1) throw InputError("camera image size must be >= 1");
  const Vec3 forward = target - position;
  if (!(forward.norm() > 0.0)) throw InputError("camera target coincides with its position");
  const Vec3 f = forward.normalized();
  const Vec3 right = f.cross(up);
  if (!(right.norm() > 1e-9)) throw InputError("camera up vector is parallel to view direction");
  const Vec3 r = right.normalized();
  const Vec3 u = r.cross(f);

  Camera cam;
  cam.position_ = position;
  cam.target_ = target;
  cam.up_ = up;
  cam.rotation_.col(0) = r;
  cam.rotation_.col(1) = u;
  cam.rotation_.col(2) = -f;
  cam.fov_y_ = fov_y_degrees;
  cam.tan_half_ = std::tan(0.5 * fov_y_degrees * kPi / 180.0);
  cam.width_ = width;
  cam.height_ = height;
  return cam;
}

Ray Camera::generate_ray(double image_x, double image_y) const {
  const double aspect = static_cast<double>(width_) / height_;
  const double px = (2.0 * image_x / width_ - 1.0) * tan_half_ * aspect;
  const double py = (1.0 - 2.0 * image_y / height_) * tan_half_;
  Ray ray;
  ray.origin = position_;
  ray.dir = (rotation_ * Vec3(px, py, -1.0)).normalized();
  return ray;
}

}  // namespace lifedit

#ifndef LIFEDIT_CAMERA_H_
#define LIFEDIT_CAMERA_H_

#include "lifedit/geometry.h"
#include "lifedit/types.h"

namespace lifedit {

// Pinhole camera looking down its local -z axis with +y up.
class Camera {
 public:
  // Throws InputError for fov outside (1, 179) degrees, empty images, or a
  // degenerate look-at frame.
  static Camera look_at(const Vec3& position, const Vec3& target, const Vec3& up,
                        double fov_y_degrees, int width, int height);

  const Vec3& position() const { return position_; }
  const Vec3& target() const { return target_; }
  const Vec3& up() const { return up_; }
  double fov_y_degrees() const { return fov_y_; }
  int width() const { return width_; }
  int height() const { return height_; }

  // Columns are the camera's right, up and backward axes in world space.
  const Mat3& world_from_camera() const { return rotation_; }

  // Ray through continuous image coordinates; (x + 0.5, y + 0.5) is the centre
  // of pixel (x, y), y grows downwards.
  Ray generate_ray(double image_x, double image_y) const;
  Ray pixel_ray(int x, int y) const { return generate_ray(x + 0.5, y + 0.5); }

 private:
  Vec3 position_, target_, up_;
  Mat3 rotation_;
  double fov_y_ = 45.0;
  double tan_half_ = 0.0;
  int width_ = 1, height_ = 1;
};

}  // namespace lifedit

#endif  // LIFEDIT_CAMERA_H_

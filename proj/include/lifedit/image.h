#ifndef LIFEDIT_IMAGE_H_
#define LIFEDIT_IMAGE_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "lifedit/types.h"

namespace lifedit {

using Pixel = Eigen::Vector3f;

// Linear-radiance float RGB image. Row 0 is the top row.
class ImageRGB {
 public:
  ImageRGB() = default;
  ImageRGB(int width, int height, const Pixel& fill = Pixel::Zero());

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  Pixel& operator()(int x, int y) { return pixels_[index(x, y)]; }
  const Pixel& operator()(int x, int y) const { return pixels_[index(x, y)]; }

  std::span<Pixel> pixels() { return pixels_; }
  std::span<const Pixel> pixels() const { return pixels_; }

  bool all_finite() const;

  friend bool operator==(const ImageRGB& a, const ImageRGB& b);

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Pixel> pixels_;
};

// UV-addressed RGB texture with bilinear filtering and clamp addressing.
//
// Texel (i, j) covers u in [i/W, (i+1)/W) and v in [j/H, (j+1)/H); v = 0 is the
// bottom image row, so texel (i, j) lives at image pixel (i, H - 1 - j).
class Texture {
 public:
  Texture() : Texture(constant(Rgb::Ones())) {}
  explicit Texture(ImageRGB image);

  static Texture constant(const Rgb& value);

  int width() const { return image_.width(); }
  int height() const { return image_.height(); }
  const ImageRGB& image() const { return image_; }

  Rgb texel(int i, int j) const;
  void set_texel(int i, int j, const Rgb& value);

  Rgb sample(const Vec2& uv) const;

  // Largest and smallest channel value over all texels.
  double max_value() const;
  double min_value() const;

 private:
  ImageRGB image_;
};

}  // namespace lifedit

#endif  // LIFEDIT_IMAGE_H_

#include "lifedit/image.h"

#include <algorithm>
#include <cmath>

#include "lifedit/errors.h"

namespace lifedit {

ImageRGB::ImageRGB(int width, int height, const Pixel& fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) throw InputError("image dimensions must be >= 1");
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

bool ImageRGB::all_finite() const {
  return std::all_of(pixels_.begin(), pixels_.end(),
                     [](const Pixel& p) { return p.allFinite(); });
}

bool operator==(const ImageRGB& a, const ImageRGB& b) {
  return a.width_ == b.width_ && a.height_ == b.height_ && a.pixels_ == b.pixels_;
}

Texture::Texture(ImageRGB image) : image_(std::move(image)) {
  if (image_.empty()) throw InputError("texture must have at least one texel");
  if (!image_.all_finite()) throw InputError("texture contains non-finite values");
}

Texture Texture::constant(const Rgb& value) {
  return Texture(ImageRGB(1, 1, value.cast<float>()));
}

Rgb Texture::texel(int i, int j) const {
  return image_(i, image_.height() - 1 - j).cast<double>();
}

void Texture::set_texel(int i, int j, const Rgb& value) {
  image_(i, image_.height() - 1 - j) = value.cast<float>();
}

Rgb Texture::sample(const Vec2& uv) const {
  const int w = width();
  const int h = height();
  const double x = uv.x() * w - 0.5;
  const double y = uv.y() * h - 0.5;
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const double tx = x - fx;
  const double ty = y - fy;
  const int i0 = static_cast<int>(fx);
  const int j0 = static_cast<int>(fy);
  auto at = [&](int i, int j) {
    return texel(std::clamp(i, 0, w - 1), std::clamp(j, 0, h - 1));
  };
  return (1 - ty) * ((1 - tx) * at(i0, j0) + tx * at(i0 + 1, j0)) +
         ty * ((1 - tx) * at(i0, j0 + 1) + tx * at(i0 + 1, j0 + 1));
}

double Texture::max_value() const {
  float m = -INFINITY;
  for (const Pixel& p : image_.pixels()) m = std::max(m, p.maxCoeff());
  return m;
}

double Texture::min_value() const {
  float m = INFINITY;
  for (const Pixel& p : image_.pixels()) m = std::min(m, p.minCoeff());
  return m;
}

}  // namespace lifedit

#include "lifedit/metrics.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "lifedit/errors.h"

namespace lifedit {

namespace {

constexpr int kWindow = 11;
constexpr int kRadius = kWindow / 2;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 1.0) * (0.01 * 1.0);
constexpr double kC2 = (0.03 * 1.0) * (0.03 * 1.0);

void check_inputs(const ImageRGB& a, const ImageRGB& b, const ImageRGB* mask) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw InputError("image dimensions differ");
  }
  if (mask && (mask->width() != a.width() || mask->height() != a.height())) {
    throw InputError("mask dimensions differ from the images");
  }
}

bool selected(const ImageRGB* mask, int x, int y) {
  return !mask || (*mask)(x, y)[0] > 0.5f;
}

using Plane = Eigen::ArrayXXd;  // rows = y, cols = x

Plane luma(const ImageRGB& img) {
  Plane out(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const Pixel& p = img(x, y);
      out(y, x) = 0.2126 * srgb_encode(p[0]) + 0.7152 * srgb_encode(p[1]) +
                  0.0722 * srgb_encode(p[2]);
    }
  }
  return out;
}

std::array<double, kWindow> gaussian_kernel() {
  std::array<double, kWindow> k{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kRadius;
    k[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable 'valid' filtering: output(y, x) is the window centred at
// (y + kRadius, x + kRadius).
Plane filter_valid(const Plane& in) {
  static const std::array<double, kWindow> k = gaussian_kernel();
  const Eigen::Index h = in.rows(), w = in.cols();
  Plane tmp = Plane::Zero(h, w - 2 * kRadius);
  for (Eigen::Index x = 0; x < tmp.cols(); ++x) {
    for (int i = 0; i < kWindow; ++i) tmp.col(x) += k[i] * in.col(x + i);
  }
  Plane out = Plane::Zero(h - 2 * kRadius, tmp.cols());
  for (Eigen::Index y = 0; y < out.rows(); ++y) {
    for (int i = 0; i < kWindow; ++i) out.row(y) += k[i] * tmp.row(y + i);
  }
  return out;
}

}  // namespace

double srgb_encode(double linear) {
  const double c = std::clamp(linear, 0.0, 1.0);
  return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

double psnr(const ImageRGB& a, const ImageRGB& b, const ImageRGB* mask) {
  check_inputs(a, b, mask);
  double sum = 0.0;
  std::size_t count = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      if (!selected(mask, x, y)) continue;
      for (int c = 0; c < 3; ++c) {
        const double d = srgb_encode(a(x, y)[c]) - srgb_encode(b(x, y)[c]);
        sum += d * d;
      }
      count += 3;
    }
  }
  if (count == 0) throw InputError("mask selects no pixels");
  const double mse = sum / static_cast<double>(count);
  if (mse == 0.0) return kPsnrIdentical;
  return 10.0 * std::log10(1.0 / mse);
}

double ssim(const ImageRGB& a, const ImageRGB& b, const ImageRGB* mask) {
  check_inputs(a, b, mask);
  if (a.width() < kWindow || a.height() < kWindow) {
    throw InputError("SSIM needs images of at least 11x11 pixels");
  }
  const Plane x = luma(a);
  const Plane y = luma(b);
  const Plane mu_x = filter_valid(x);
  const Plane mu_y = filter_valid(y);
  const Plane sxx = filter_valid(x * x) - mu_x * mu_x;
  const Plane syy = filter_valid(y * y) - mu_y * mu_y;
  const Plane sxy = filter_valid(x * y) - mu_x * mu_y;
  const Plane map = ((2.0 * mu_x * mu_y + kC1) * (2.0 * sxy + kC2)) /
                    ((mu_x * mu_x + mu_y * mu_y + kC1) * (sxx + syy + kC2));

  double sum = 0.0;
  std::size_t count = 0;
  for (Eigen::Index r = 0; r < map.rows(); ++r) {
    for (Eigen::Index c = 0; c < map.cols(); ++c) {
      if (!selected(mask, static_cast<int>(c) + kRadius, static_cast<int>(r) + kRadius)) continue;
      sum += map(r, c);
      ++count;
    }
  }
  if (count == 0) throw InputError("mask selects no SSIM window centres");
  return std::clamp(sum / static_cast<double>(count), -1.0, 1.0);
}

MetricReport compare_images(const ImageRGB& reference, const ImageRGB& test,
                            const ImageRGB* mask) {
  MetricReport report;
  report.psnr = psnr(reference, test, mask);
  report.ssim = ssim(reference, test, mask);
  report.masked = mask != nullptr;
  if (mask) {
    for (const Pixel& p : mask->pixels()) report.pixels_compared += p[0] > 0.5f ? 1 : 0;
  } else {
    report.pixels_compared = reference.pixel_count();
  }
  return report;
}

}  // namespace lifedit

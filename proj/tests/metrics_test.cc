#include <cmath>

#include <gtest/gtest.h>

#include "lifedit/errors.h"
#include "lifedit/metrics.h"

namespace lifedit {
namespace {

double srgb_decode(double v) {
  return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

// Grey image whose display-encoded value at (x, y) is f(x, y).
template <typename F>
ImageRGB encoded_grey(int w, int h, F&& f) {
  ImageRGB img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) img(x, y) = Pixel::Constant(static_cast<float>(srgb_decode(f(x, y))));
  }
  return img;
}

double pattern(int x, int y) { return (x * 7 + y * 3) % 5 < 2 ? 1.0 : 0.0; }
double graded(int x, int y) { return ((x * 13 + y * 29) % 17) / 16.0; }
double graded_distorted(int x, int y) {
  return std::clamp(graded(x, y) * 0.8 + 0.1 * std::sin(x / 3.0), 0.0, 1.0);
}

// Direct SSIM: explicit 11x11 Gaussian windows over the grey channel.
double naive_ssim(const ImageRGB& a, const ImageRGB& b) {
  double k[11][11], ksum = 0.0;
  for (int i = 0; i < 11; ++i) {
    for (int j = 0; j < 11; ++j) {
      k[i][j] = std::exp(-((i - 5) * (i - 5) + (j - 5) * (j - 5)) / (2 * 1.5 * 1.5));
      ksum += k[i][j];
    }
  }
  const double c1 = 1e-4, c2 = 9e-4;
  double total = 0.0;
  int n = 0;
  for (int cy = 5; cy < a.height() - 5; ++cy) {
    for (int cx = 5; cx < a.width() - 5; ++cx) {
      double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
      for (int i = 0; i < 11; ++i) {
        for (int j = 0; j < 11; ++j) {
          const double w = k[i][j] / ksum;
          const double x = srgb_encode(a(cx + j - 5, cy + i - 5)[0]);
          const double y = srgb_encode(b(cx + j - 5, cy + i - 5)[0]);
          mx += w * x;
          my += w * y;
          sxx += w * x * x;
          syy += w * y * y;
          sxy += w * x * y;
        }
      }
      sxx -= mx * mx;
      syy -= my * my;
      sxy -= mx * my;
      total += (2 * mx * my + c1) * (2 * sxy + c2) / ((mx * mx + my * my + c1) * (sxx + syy + c2));
      ++n;
    }
  }
  return total / n;
}

TEST(Psnr, IdenticalIsSentinel) {
  const ImageRGB a = encoded_grey(16, 16, graded);
  EXPECT_EQ(psnr(a, a), 99.0);
}

TEST(Psnr, UniformOffset) {
  const ImageRGB a = encoded_grey(16, 16, [](int, int) { return 0.5; });
  const ImageRGB b = encoded_grey(16, 16, [](int, int) { return 0.6; });
  EXPECT_NEAR(psnr(a, b), 20.0, 1e-4);
}

TEST(Psnr, CheckerVersusInverse) {
  const ImageRGB a = encoded_grey(16, 16, [](int x, int y) { return (x + y) % 2 * 1.0; });
  const ImageRGB b = encoded_grey(16, 16, [](int x, int y) { return 1.0 - (x + y) % 2; });
  EXPECT_NEAR(psnr(a, b), 0.0, 1e-12);
}

TEST(Psnr, HdrValuesAreClamped) {
  ImageRGB a(4, 4, Pixel::Constant(5.0f)), b(4, 4, Pixel::Constant(1.0f));
  EXPECT_EQ(psnr(a, b), 99.0);
}

TEST(Psnr, MaskSelectsPixels) {
  const ImageRGB a = encoded_grey(16, 16, [](int, int) { return 0.5; });
  const ImageRGB b = encoded_grey(16, 16, [](int x, int) { return x < 8 ? 0.5 : 0.9; });
  ImageRGB mask(16, 16);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 8; ++x) mask(x, y) = Pixel::Ones();
  }
  EXPECT_EQ(psnr(a, b, &mask), 99.0);
  EXPECT_LT(psnr(a, b), 20.0);
  EXPECT_THROW(psnr(a, b, &(mask = ImageRGB(16, 16))), InputError);
}

TEST(Psnr, DimensionMismatch) {
  EXPECT_THROW(psnr(ImageRGB(4, 4), ImageRGB(4, 5)), InputError);
}

TEST(Ssim, IdenticalIsOne) {
  const ImageRGB a = encoded_grey(24, 24, graded);
  EXPECT_NEAR(ssim(a, a), 1.0, 1e-12);
}

TEST(Ssim, ConstantImagesLuminanceTerm) {
  const double m1 = 0.3, m2 = 0.7;
  const ImageRGB a = encoded_grey(20, 20, [&](int, int) { return m1; });
  const ImageRGB b = encoded_grey(20, 20, [&](int, int) { return m2; });
  const double expected = (2 * m1 * m2 + 1e-4) / (m1 * m1 + m2 * m2 + 1e-4);
  EXPECT_NEAR(ssim(a, b), expected, 1e-6);
}

TEST(Ssim, MatchesNaiveImplementation) {
  const ImageRGB a = encoded_grey(24, 20, graded);
  const ImageRGB b = encoded_grey(24, 20, graded_distorted);
  EXPECT_NEAR(ssim(a, b), naive_ssim(a, b), 1e-10);
}

TEST(Ssim, BinaryVersusInverseMatchesReference) {
  // Reference values from scikit-image structural_similarity with
  // gaussian_weights=True, sigma=1.5, use_sample_covariance=False,
  // data_range=1 on the same grey images.
  const ImageRGB a = encoded_grey(24, 24, pattern);
  const ImageRGB b = encoded_grey(24, 24, [](int x, int y) { return 1.0 - pattern(x, y); });
  const double s = ssim(a, b);
  EXPECT_LT(s, -0.5);
  EXPECT_NEAR(s, -0.9194972639137295, 1e-6);
  EXPECT_NEAR(ssim(encoded_grey(24, 24, graded), encoded_grey(24, 24, graded_distorted)),
              0.9206953041999247, 1e-5);
}

TEST(Ssim, RequiresWindowSizedImages) {
  EXPECT_THROW(ssim(ImageRGB(10, 30), ImageRGB(10, 30)), InputError);
}

TEST(CompareImages, Report) {
  const ImageRGB a = encoded_grey(16, 16, graded);
  ImageRGB mask(16, 16, Pixel::Ones());
  const MetricReport r = compare_images(a, a, &mask);
  EXPECT_EQ(r.psnr, 99.0);
  EXPECT_NEAR(r.ssim, 1.0, 1e-12);
  EXPECT_EQ(r.pixels_compared, 256u);
  EXPECT_TRUE(r.masked);
}

}  // namespace
}  // namespace lifedit

#ifndef LIFEDIT_METRICS_H_
#define LIFEDIT_METRICS_H_

#include <optional>

#include "lifedit/image.h"

namespace lifedit {

// Reported in place of +inf when two encoded images are identical.
inline constexpr double kPsnrIdentical = 99.0;

// Clamp to [0, 1] followed by the sRGB transfer curve.
double srgb_encode(double linear);

// Both metrics compare display-encoded images. A mask selects the pixels
// (PSNR) or window centres (SSIM) where its first channel is > 0.5.
// Throw InputError on dimension mismatch or an empty mask.

// 10 log10(1 / MSE) over all channels of the selected pixels, peak 1.
double psnr(const ImageRGB& a, const ImageRGB& b, const ImageRGB* mask = nullptr);

// Single-scale SSIM of Rec. 709 luma: 11x11 Gaussian window (sigma 1.5),
// K1 = 0.01, K2 = 0.03, dynamic range 1, averaged over windows fully inside
// the image. Both sides must be >= 11.
double ssim(const ImageRGB& a, const ImageRGB& b, const ImageRGB* mask = nullptr);

struct MetricReport {
  double psnr = 0.0;
  double ssim = 0.0;
  std::size_t pixels_compared = 0;
  bool masked = false;
};

MetricReport compare_images(const ImageRGB& reference, const ImageRGB& test,
                            const ImageRGB* mask = nullptr);

}  // namespace lifedit

#endif  // LIFEDIT_METRICS_H_

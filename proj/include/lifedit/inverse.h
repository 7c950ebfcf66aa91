#ifndef LIFEDIT_INVERSE_H_
#define LIFEDIT_INVERSE_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lifedit/camera.h"
#include "lifedit/image.h"
#include "lifedit/lighting.h"
#include "lifedit/scene.h"
#include "lifedit/sh.h"

namespace lifedit {

struct View {
  ImageRGB image;
  ImageRGB mask;  // 1 inside the object, 0 elsewhere
  Camera camera;
};

using ViewSet = std::vector<View>;

// Throws InputError for an empty set, image/mask sizes that differ from the
// camera, or non-binary masks.
void validate_views(const ViewSet& views);

struct FitReport {
  int iterations = 0;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  std::vector<double> loss_history;     // loss before each epoch, then the final loss
  std::vector<int> observation_counts;  // per texel
  int observed_texels = 0;
  int unobserved_texels = 0;
  std::vector<double> texel_rms_residual;  // per texel, 0 where unobserved
  double mean_abs_residual = 0.0;
  double max_abs_residual = 0.0;
};

struct AlbedoEstimate {
  Texture albedo;
  FitReport report;
};

// Recovers a per-texel diffuse albedo by l1 subgradient descent on
//   sum_k | render(albedo) * m_k - I_k * m_k |_1
// with the forward model pixel = albedo(texel) * E / pi, where E is the
// irradiance at the pixel's hit point (estimated once per view with the
// scene's spp). The albedo starts uniformly random in [0.2, 0.8]; each epoch
// moves every texel by step times its mean subgradient and clamps to [0, 1].
// Loss values are mean absolute residuals over observed pixel channels.
AlbedoEstimate estimate_albedo(const Scene& scene, const ViewSet& views, int resolution,
                               int iterations, double step, std::uint64_t seed);

// One pixel observation of a texel: its projected BRDF slice and value.
struct LifObservation {
  ShTripled brdf;
  Rgb value;
};

// Per-channel normal equations sum f f^T T = sum f I of one texel.
struct TexelSystem {
  std::array<Eigen::Matrix<double, kShCoeffCount, kShCoeffCount>, 3> ata;
  ShTripled atb;
  int count = 0;

  TexelSystem();
  void add(const ShTripled& brdf, const Rgb& value);

  // argmin_T sum (f.T - I)^2 + lambda |T - prior|^2 per channel. Throws
  // NumericalError when lambda = 0 and the system is singular.
  ShTripled solve(double lambda, const ShTripled& prior) const;
};

ShTripled fit_texel_lif(std::span<const LifObservation> observations, double lambda,
                        const ShTripled& prior);

struct LifFit {
  LifTexture lif;
  FitReport report;
};

// Per-texel regularised least squares for the LIF given the training albedo.
// Each masked pixel contributes to the texel containing its hit UV; texels
// without observations keep the prior. Throws InputError for a prior of the
// wrong resolution or lambda < 0, NumericalError naming the texel for a
// singular system.
LifFit fit_lif(const Scene& scene, const ViewSet& views, const Texture& albedo, int resolution,
               double lambda, const LifTexture& prior, int n_brdf_samples, std::uint64_t seed);

inline constexpr double kDefaultLambda = 1e-2;

}  // namespace lifedit

#endif  // LIFEDIT_INVERSE_H_

#ifndef LIFEDIT_RENDER_H_
#define LIFEDIT_RENDER_H_

#include <cstdint>

#include "lifedit/camera.h"
#include "lifedit/image.h"
#include "lifedit/lighting.h"
#include "lifedit/scene.h"

namespace lifedit {

// Monte Carlo estimate of direct environment lighting: per pixel, spp uniform
// hemisphere samples about the shading normal of f_r L_e V cos / pdf. Misses
// return the environment radiance. Randomness is keyed by (seed, pixel), so
// the image is independent of the worker count.
ImageRGB render_reference(const Scene& scene, const Camera& cam, int spp, std::uint64_t seed);

// Per pixel: f_r projected to SH at the first hit, dotted with the LIF sampled
// at the hit UV, per channel. Misses return the environment radiance.
ImageRGB render_sh(const Scene& scene, const Camera& cam, const LifTexture& lif,
                   int n_brdf_samples, std::uint64_t seed);

// 1 where the primary ray hits the mesh, 0 elsewhere.
ImageRGB render_mask(const Scene& scene, const Camera& cam);

inline constexpr int kDefaultBrdfSamples = 1024;

}  // namespace lifedit

#endif  // LIFEDIT_RENDER_H_

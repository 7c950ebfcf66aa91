#ifndef LIFEDIT_RANDOM_H_
#define LIFEDIT_RANDOM_H_

#include <cstdint>
#include <random>

#include "lifedit/types.h"

namespace lifedit {

// Stateless 64-bit finalizer (splitmix64).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derives a child seed from a parent seed and a key such as a pixel or texel
// index. Streams keyed this way do not depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) {
  return mix64(mix64(seed) ^ (key * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
}

// Uniform double stream on [0, 1). The integer-to-double mapping is explicit so
// that values are identical across standard library implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(mix64(seed)) {}
  Sampler(std::uint64_t seed, std::uint64_t key) : Sampler(derive_seed(seed, key)) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

inline Vec3 uniform_sphere(double u1, double u2) {
  const double z = 1.0 - 2.0 * u1;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = 2.0 * kPi * u2;
  return {r * std::cos(phi), r * std::sin(phi), z};
}

// Uniform over the hemisphere around +z; pdf 1 / (2 pi).
inline Vec3 uniform_hemisphere(double u1, double u2) {
  const double z = u1;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = 2.0 * kPi * u2;
  return {r * std::cos(phi), r * std::sin(phi), z};
}

}  // namespace lifedit

#endif  // LIFEDIT_RANDOM_H_

#ifndef LIFEDIT_SH_H_
#define LIFEDIT_SH_H_

// Real spherical harmonics up to band l = 4.
//
// Convention: Y_0^0 = 1 / (2 sqrt(pi)), z is the polar axis, no Condon-Shortley
// phase. For m > 0, Y_l^m is proportional to Re((x + iy)^m) and Y_l^-m to
// Im((x + iy)^m), both with a positive factor. Coefficients are stored flat at
// index l(l+1) + m. This order is also the on-disk order of LIF files.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "lifedit/errors.h"
#include "lifedit/random.h"
#include "lifedit/types.h"

namespace lifedit {

class ImageRGB;

inline constexpr int kShOrder = 4;
inline constexpr int kShCoeffCount = (kShOrder + 1) * (kShOrder + 1);

constexpr int sh_index(int l, int m) { return l * (l + 1) + m; }

template <typename Scalar>
using ShVector = Eigen::Matrix<Scalar, kShCoeffCount, 1>;

// One column per colour channel (R, G, B). Column-major storage puts the 25
// coefficients of each channel next to each other.
template <typename Scalar>
using ShTriple = Eigen::Matrix<Scalar, kShCoeffCount, 3>;

using ShVectord = ShVector<double>;
using ShTripled = ShTriple<double>;
using ShTriplef = ShTriple<float>;

namespace detail {

// Normalisation constants including the sqrt(2) of the m != 0 terms.
const double* sh_normalization();

template <typename Scalar>
void eval_basis(Scalar x, Scalar y, Scalar z, Scalar* out) {
  const double* k = sh_normalization();

  // Re/Im of (x + iy)^m.
  Scalar c[kShOrder + 1], s[kShOrder + 1];
  c[0] = Scalar(1);
  s[0] = Scalar(0);
  for (int m = 0; m < kShOrder; ++m) {
    c[m + 1] = x * c[m] - y * s[m];
    s[m + 1] = x * s[m] + y * c[m];
  }

  // Associated Legendre functions divided by sin^m(theta), without the
  // Condon-Shortley sign.
  Scalar pmm = Scalar(1);
  for (int m = 0; m <= kShOrder; ++m) {
    if (m > 0) pmm *= Scalar(2 * m - 1);
    Scalar p_prev = pmm;
    Scalar p_curr = z * Scalar(2 * m + 1) * pmm;
    for (int l = m; l <= kShOrder; ++l) {
      Scalar p;
      if (l == m) {
        p = pmm;
      } else if (l == m + 1) {
        p = p_curr;
      } else {
        p = (Scalar(2 * l - 1) * z * p_curr - Scalar(l + m - 1) * p_prev) / Scalar(l - m);
        p_prev = p_curr;
        p_curr = p;
      }
      if (m == 0) {
        out[sh_index(l, 0)] = Scalar(k[sh_index(l, 0)]) * p;
      } else {
        out[sh_index(l, m)] = Scalar(k[sh_index(l, m)]) * p * c[m];
        out[sh_index(l, -m)] = Scalar(k[sh_index(l, -m)]) * p * s[m];
      }
    }
  }
}

[[noreturn]] void throw_non_finite(const Vec3& d);

}  // namespace detail

// Y_i(d) for all 25 basis functions. Throws InputError if d is not unit length.
template <typename Scalar>
ShVector<Scalar> sh_eval_basis(const Eigen::Matrix<Scalar, 3, 1>& d) {
  const double len = std::sqrt(static_cast<double>(d.squaredNorm()));
  if (!(std::abs(len - 1.0) <= kUnitTolerance)) {
    std::ostringstream msg;
    msg << "sh_eval_basis: direction (" << d.transpose() << ") is not unit length";
    throw InputError(msg.str());
  }
  ShVector<Scalar> out;
  detail::eval_basis(d.x(), d.y(), d.z(), out.data());
  return out;
}

// i-th point of the randomly shifted Fibonacci lattice used by project_mc.
// Each point is marginally uniform on the sphere for a uniform shift.
inline Vec3 sphere_lattice_point(std::uint64_t i, std::uint64_t count, const Vec2& shift) {
  constexpr double kGoldenFrac = 0.61803398874989484820;
  double u1 = (static_cast<double>(i) + 0.5) / static_cast<double>(count) + shift.x();
  double u2 = static_cast<double>(i) * kGoldenFrac + shift.y();
  u1 -= std::floor(u1);
  u2 -= std::floor(u2);
  return uniform_sphere(u1, u2);
}

inline Vec2 lattice_shift(std::uint64_t seed) {
  Sampler rng(seed);
  const double a = rng.uniform();
  return {a, rng.uniform()};
}

// Monte Carlo projection (4 pi / N) sum f(w_j) Y(w_j) over N uniformly
// distributed sphere directions. f returns either a scalar (result ShVectord)
// or an Rgb (result ShTripled). Throws NumericalError naming the direction if f
// returns a non-finite value.
template <typename F>
auto project_mc(F&& f, int n_samples, std::uint64_t seed) {
  using R = std::decay_t<std::invoke_result_t<F&, const Vec3&>>;
  constexpr bool kRgb = !std::is_arithmetic_v<R>;
  using Out = std::conditional_t<kRgb, ShTripled, ShVectord>;
  if (n_samples < 1) throw InputError("project_mc: n_samples must be >= 1");

  const Vec2 shift = lattice_shift(seed);
  const auto count = static_cast<std::uint64_t>(n_samples);
  Out acc = Out::Zero();
  ShVectord y;
  for (std::uint64_t j = 0; j < count; ++j) {
    const Vec3 d = sphere_lattice_point(j, count, shift);
    const R v = f(d);
    if constexpr (kRgb) {
      if (!v.allFinite()) detail::throw_non_finite(d);
      if ((v.array() == 0.0).all()) continue;
      detail::eval_basis(d.x(), d.y(), d.z(), y.data());
      acc.noalias() += y * v.transpose();
    } else {
      if (!std::isfinite(v)) detail::throw_non_finite(d);
      if (v == 0) continue;
      detail::eval_basis(d.x(), d.y(), d.z(), y.data());
      acc.noalias() += y * static_cast<double>(v);
    }
  }
  acc *= 4.0 * kPi / static_cast<double>(count);
  return acc;
}

// Product quadrature node on the sphere.
struct QuadratureNode {
  Vec3 direction;
  double weight;
};

// Gauss-Legendre in cos(theta) (two panels split at the equator, `resolution`
// nodes each) times a uniform rule in phi with 2 * resolution nodes.
const std::vector<QuadratureNode>& sphere_quadrature(int resolution);

// Deterministic counterpart of project_mc. resolution >= 16.
template <typename F>
auto project_quadrature(F&& f, int resolution) {
  using R = std::decay_t<std::invoke_result_t<F&, const Vec3&>>;
  constexpr bool kRgb = !std::is_arithmetic_v<R>;
  using Out = std::conditional_t<kRgb, ShTripled, ShVectord>;
  if (resolution < 16) throw InputError("project_quadrature: resolution must be >= 16");

  Out acc = Out::Zero();
  ShVectord y;
  for (const QuadratureNode& node : sphere_quadrature(resolution)) {
    const Vec3& d = node.direction;
    const R v = f(d);
    detail::eval_basis(d.x(), d.y(), d.z(), y.data());
    if constexpr (kRgb) {
      if (!v.allFinite()) detail::throw_non_finite(d);
      acc.noalias() += (node.weight * y) * v.transpose();
    } else {
      if (!std::isfinite(v)) detail::throw_non_finite(d);
      acc.noalias() += (node.weight * static_cast<double>(v)) * y;
    }
  }
  return acc;
}

// Quadrature of f over the sphere with the same rule as project_quadrature.
template <typename F>
double integrate_quadrature(F&& f, int resolution) {
  double sum = 0.0;
  for (const QuadratureNode& node : sphere_quadrature(resolution)) {
    sum += node.weight * f(node.direction);
  }
  return sum;
}

template <typename Scalar>
Scalar sh_dot(const ShVector<Scalar>& a, const ShVector<Scalar>& b) {
  return a.dot(b);
}

// Per-channel dot product of two triples.
template <typename Scalar>
Rgb sh_dot(const ShTriple<Scalar>& a, const ShTriple<Scalar>& b) {
  return (a.template cast<double>().array() * b.template cast<double>().array())
      .colwise()
      .sum()
      .transpose();
}

// Reconstruction sum_i c_i Y_i(d) per channel.
Rgb sh_reconstruct(const ShTripled& s, const Vec3& d);

// Lat-long image of the reconstruction. Negative lobes are kept.
ImageRGB sh_to_latlong(const ShTripled& s, int width, int height);

}  // namespace lifedit

#endif  // LIFEDIT_SH_H_

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lifedit/image.h"
#include "lifedit/sh.h"

namespace lifedit {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Textbook real SH polynomials for l <= 2 (no Condon-Shortley phase).
ShVectord low_order_oracle(const Vec3& d) {
  const double x = d.x(), y = d.y(), z = d.z();
  ShVectord out = ShVectord::Zero();
  out[0] = 0.5 / kSqrtPi;
  const double c1 = std::sqrt(3.0 / (4.0 * kPi));
  out[sh_index(1, -1)] = c1 * y;
  out[sh_index(1, 0)] = c1 * z;
  out[sh_index(1, 1)] = c1 * x;
  const double c2 = 0.5 * std::sqrt(15.0 / kPi);
  out[sh_index(2, -2)] = c2 * x * y;
  out[sh_index(2, -1)] = c2 * y * z;
  out[sh_index(2, 0)] = 0.25 * std::sqrt(5.0 / kPi) * (3.0 * z * z - 1.0);
  out[sh_index(2, 1)] = c2 * x * z;
  out[sh_index(2, 2)] = 0.25 * std::sqrt(15.0 / kPi) * (x * x - y * y);
  return out;
}

Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return Vec3(n(rng), n(rng), n(rng)).normalized();
}

double clamped_cos(const Vec3& d) { return std::max(d.z(), 0.0); }

TEST(ShBasis, ConstantTerm) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    EXPECT_NEAR(sh_eval_basis(random_direction(rng))[0], 0.2820948, 1e-7);
  }
}

TEST(ShBasis, ZonalAtPole) {
  const ShVectord y = sh_eval_basis(Vec3(0, 0, 1));
  EXPECT_NEAR(y[sh_index(1, 0)], 0.4886025, 1e-7);
  EXPECT_NEAR(y[sh_index(2, 0)], 0.6307831, 1e-7);
  for (int l = 0; l <= kShOrder; ++l) {
    EXPECT_NEAR(y[sh_index(l, 0)], std::sqrt((2 * l + 1) / (4 * kPi)), 1e-12);
    for (int m = 1; m <= l; ++m) {
      EXPECT_EQ(y[sh_index(l, m)], 0.0);
      EXPECT_EQ(y[sh_index(l, -m)], 0.0);
    }
  }
}

TEST(ShBasis, MatchesPolynomialsUpToBandTwo) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const Vec3 d = random_direction(rng);
    const ShVectord y = sh_eval_basis(d);
    const ShVectord oracle = low_order_oracle(d);
    for (int i = 0; i < 9; ++i) EXPECT_NEAR(y[i], oracle[i], 1e-12) << "index " << i;
  }
}

TEST(ShBasis, FloatAgreesWithDouble) {
  const Vec3 d = Vec3(0.3, -0.5, 0.8).normalized();
  const ShVector<float> yf = sh_eval_basis<float>(d.cast<float>());
  const ShVectord yd = sh_eval_basis(d);
  EXPECT_LT((yf.cast<double>() - yd).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(ShBasis, RejectsNonUnitDirection) {
  EXPECT_THROW(sh_eval_basis(Vec3(1, 1, 0)), InputError);
  EXPECT_THROW(sh_eval_basis(Vec3(0, 0, 0)), InputError);
}

TEST(ShBasis, AdditionTheorem) {
  // sum_m Y_lm(d)^2 = (2l + 1) / (4 pi) for every direction and band.
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    const ShVectord y = sh_eval_basis(random_direction(rng));
    for (int l = 0; l <= kShOrder; ++l) {
      double sum = 0.0;
      for (int m = -l; m <= l; ++m) sum += y[sh_index(l, m)] * y[sh_index(l, m)];
      EXPECT_NEAR(sum, (2 * l + 1) / (4 * kPi), 1e-12);
    }
  }
}

TEST(ShQuadrature, WeightsSumToSphereArea) {
  double total = 0.0;
  for (const QuadratureNode& n : sphere_quadrature(32)) total += n.weight;
  EXPECT_NEAR(total, 4 * kPi, 1e-12);
}

TEST(ShQuadrature, Orthonormality) {
  Eigen::Matrix<double, kShCoeffCount, kShCoeffCount> gram =
      Eigen::Matrix<double, kShCoeffCount, kShCoeffCount>::Zero();
  for (const QuadratureNode& n : sphere_quadrature(64)) {
    const ShVectord y = sh_eval_basis(n.direction);
    gram += n.weight * y * y.transpose();
  }
  const double err =
      (gram - Eigen::Matrix<double, kShCoeffCount, kShCoeffCount>::Identity()).cwiseAbs().maxCoeff();
  EXPECT_LT(err, 1e-12);
}

TEST(ShQuadrature, ConstantFunction) {
  const ShVectord c = project_quadrature([](const Vec3&) { return 1.0; }, 32);
  EXPECT_NEAR(c[0], 2 * kSqrtPi, 1e-9);
  EXPECT_LT(c.tail<24>().cwiseAbs().maxCoeff(), 1e-9);
}

TEST(ShQuadrature, BasisFunctionProjectsToUnitVector) {
  const int idx = sh_index(3, -2);
  const ShVectord c =
      project_quadrature([&](const Vec3& d) { return sh_eval_basis(d)[idx]; }, 32);
  for (int i = 0; i < kShCoeffCount; ++i) EXPECT_NEAR(c[i], i == idx ? 1.0 : 0.0, 1e-9);
}

TEST(ShQuadrature, ClampedCosineClosedForm) {
  // Closed forms: int max(cos,0) Y_l0 over the sphere.
  const ShVectord c = project_quadrature(clamped_cos, 64);
  EXPECT_NEAR(c[sh_index(0, 0)], kSqrtPi / 2, 1e-6);
  EXPECT_NEAR(c[sh_index(1, 0)], std::sqrt(kPi / 3), 1e-6);
  EXPECT_NEAR(c[sh_index(2, 0)], std::sqrt(5 * kPi) / 8, 1e-6);
  EXPECT_NEAR(c[sh_index(3, 0)], 0.0, 1e-9);
  EXPECT_NEAR(c[sh_index(4, 0)], -std::sqrt(kPi) / 16, 1e-6);  // -sqrt(9 pi) / 48
}

TEST(ShQuadrature, RgbProjectionIsPerChannel) {
  const ShTripled c = project_quadrature(
      [](const Vec3& d) { return Rgb(1.0, clamped_cos(d), 2.0 * d.x()); }, 24);
  EXPECT_NEAR(c(0, 0), 2 * kSqrtPi, 1e-9);
  EXPECT_NEAR(c(0, 1), kSqrtPi / 2, 1e-6);
  EXPECT_NEAR(c(sh_index(1, 1), 2), 2.0 / std::sqrt(3.0 / (4 * kPi)), 1e-9);
}

TEST(ShMonteCarlo, ConstantFunction) {
  const ShVectord c = project_mc([](const Vec3&) { return 0.7; }, 4096, 11);
  EXPECT_NEAR(c[0], 0.7 * 2 * kSqrtPi, 1e-3);
  EXPECT_LT(c.tail<24>().cwiseAbs().maxCoeff(), 1e-2);
}

TEST(ShMonteCarlo, ClampedCosine) {
  const ShVectord c = project_mc(clamped_cos, 16384, 5);
  const ShVectord ref = project_quadrature(clamped_cos, 64);
  EXPECT_LT((c - ref).cwiseAbs().maxCoeff(), 5e-3);
}

TEST(ShMonteCarlo, BasisFunctionProjectsToUnitVector) {
  const int idx = sh_index(2, 1);
  const ShVectord c = project_mc([&](const Vec3& d) { return sh_eval_basis(d)[idx]; }, 16384, 9);
  for (int i = 0; i < kShCoeffCount; ++i) EXPECT_NEAR(c[i], i == idx ? 1.0 : 0.0, 5e-3);
}

TEST(ShMonteCarlo, UnbiasedAcrossSeeds) {
  // The mean over independent shifts converges to the quadrature value.
  const ShVectord ref = project_quadrature(clamped_cos, 64);
  ShVectord mean = ShVectord::Zero();
  constexpr int kSeeds = 200;
  for (int s = 0; s < kSeeds; ++s) mean += project_mc(clamped_cos, 64, s);
  mean /= kSeeds;
  EXPECT_LT((mean - ref).cwiseAbs().maxCoeff(), 5e-3);
}

TEST(ShMonteCarlo, DeterministicPerSeed) {
  auto f = [](const Vec3& d) { return Rgb(d.x() * d.x(), clamped_cos(d), 1.0); };
  EXPECT_EQ(project_mc(f, 1000, 42), project_mc(f, 1000, 42));
  EXPECT_NE(project_mc(f, 1000, 42), project_mc(f, 1000, 43));
}

TEST(ShMonteCarlo, NonFiniteValueIsReported) {
  auto f = [](const Vec3& d) { return d.z() > 0.5 ? std::nan("") : 1.0; };
  EXPECT_THROW(project_mc(f, 100, 1), NumericalError);
  EXPECT_THROW(project_mc(f, 0, 1), InputError);
}

TEST(ShDot, ConstantFunctions) {
  const double a = 0.4, b = 2.5;
  const ShVectord fa = project_quadrature([&](const Vec3&) { return a; }, 16);
  const ShVectord fb = project_quadrature([&](const Vec3&) { return b; }, 16);
  EXPECT_NEAR(sh_dot(fa, fb), 4 * kPi * a * b, 1e-9);
  const ShVectord e = ShVectord::Unit(7);
  EXPECT_EQ(sh_dot(e, e), 1.0);
}

TEST(ShDot, ParsevalAgainstQuadratureOfProduct) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 100; ++trial) {
    ShVectord a, b;
    for (int i = 0; i < kShCoeffCount; ++i) {
      a[i] = n(rng);
      b[i] = n(rng);
    }
    const double integral = integrate_quadrature(
        [&](const Vec3& d) {
          const ShVectord y = sh_eval_basis(d);
          return a.dot(y) * b.dot(y);
        },
        64);
    EXPECT_NEAR(sh_dot(a, b), integral, 1e-9 * (1.0 + std::abs(integral)));
  }
}

TEST(ShDot, TriplePerChannel) {
  ShTripled a = ShTripled::Zero(), b = ShTripled::Zero();
  a(0, 0) = 1;
  a(3, 1) = 2;
  a(5, 2) = -1;
  b(0, 0) = 3;
  b(3, 1) = 4;
  b(5, 2) = 5;
  b(6, 2) = 100;
  EXPECT_EQ(sh_dot(a, b), Rgb(3, 8, -5));
}

TEST(ShLatlong, ZeroAndConstant) {
  const ImageRGB zero = sh_to_latlong(ShTripled::Zero(), 16, 8);
  for (const Pixel& p : zero.pixels()) EXPECT_EQ(p, Pixel::Zero());

  const ShTripled ones =
      project_quadrature([](const Vec3&) { return Rgb(1, 1, 1); }, 16);
  const ImageRGB img = sh_to_latlong(ones, 16, 8);
  for (const Pixel& p : img.pixels()) EXPECT_LT((p - Pixel::Ones()).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(ShLatlong, ClampedCosineReconstruction) {
  // Truncated clamped cosine about +y (the lat-long up axis), rotated from its
  // closed-form zonal coefficients, versus direct evaluation of the zonal
  // expansion.
  const double zonal[kShOrder + 1] = {std::sqrt(kPi) / 2, std::sqrt(kPi / 3),
                                      std::sqrt(5 * kPi) / 8, 0.0, -std::sqrt(kPi) / 16};
  const ShVectord up = sh_eval_basis(Vec3(Vec3::UnitY()));
  ShTripled s;
  for (int l = 0; l <= kShOrder; ++l) {
    for (int m = -l; m <= l; ++m) {
      s.row(sh_index(l, m)).setConstant(std::sqrt(4 * kPi / (2 * l + 1)) * zonal[l] * up[sh_index(l, m)]);
    }
  }
  const int w = 32, h = 16;
  const ImageRGB img = sh_to_latlong(s, w, h);
  double max_ringing = 0.0;
  for (int y = 0; y < h; ++y) {
    const double theta = (y + 0.5) / h * kPi;
    const double c = std::cos(theta);
    // sum_l A_l Y_l0(c) with the closed-form zonal coefficients.
    const double p2 = 0.5 * (3 * c * c - 1);
    const double p4 = (35 * c * c * c * c - 30 * c * c + 3) / 8;
    const double expected = 0.25 + 0.5 * c + (5.0 / 16.0) * p2 - (3.0 / 32.0) * p4;
    for (int x = 0; x < w; ++x) {
      EXPECT_NEAR(img(x, y)[1], expected, 1e-6);
      max_ringing = std::max(max_ringing, std::abs(img(x, y)[1] - std::max(c, 0.0)));
    }
  }
  // Truncation error of the order-4 clamped cosine stays small.
  EXPECT_LT(max_ringing, 0.07);
}

}  // namespace
}  // namespace lifedit

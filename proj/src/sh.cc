#include "lifedit/sh.h"

#include <array>
#include <map>
#include <mutex>

#include "lifedit/image.h"
#include "lifedit/latlong.h"

namespace lifedit {

namespace detail {

const double* sh_normalization() {
  static const std::array<double, kShCoeffCount> table = [] {
    std::array<double, kShCoeffCount> k{};
    for (int l = 0; l <= kShOrder; ++l) {
      for (int m = -l; m <= l; ++m) {
        const int am = std::abs(m);
        // (l - |m|)! / (l + |m|)!
        double ratio = 1.0;
        for (int i = l - am + 1; i <= l + am; ++i) ratio /= i;
        double v = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) * ratio);
        if (m != 0) v *= std::sqrt(2.0);
        k[sh_index(l, m)] = v;
      }
    }
    return k;
  }();
  return table.data();
}

void throw_non_finite(const Vec3& d) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "non-finite function value at direction (" << d.x() << ", " << d.y() << ", "
      << d.z() << ")";
  throw NumericalError(msg.str());
}

}  // namespace detail

namespace {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

std::vector<QuadratureNode> build_quadrature(int resolution) {
  std::vector<double> x, w;
  gauss_legendre(resolution, x, w);
  const int n_phi = 2 * resolution;
  const double w_phi = 2.0 * kPi / n_phi;

  std::vector<QuadratureNode> nodes;
  nodes.reserve(static_cast<std::size_t>(2 * resolution * n_phi));
  for (int panel = 0; panel < 2; ++panel) {
    // Map [-1, 1] onto [-1, 0] or [0, 1].
    const double offset = panel == 0 ? -0.5 : 0.5;
    for (int i = 0; i < resolution; ++i) {
      const double z = offset + 0.5 * x[i];
      const double wz = 0.5 * w[i];
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int k = 0; k < n_phi; ++k) {
        const double phi = (k + 0.5) * w_phi;
        nodes.push_back({Vec3(r * std::cos(phi), r * std::sin(phi), z), wz * w_phi});
      }
    }
  }
  return nodes;
}

}  // namespace

const std::vector<QuadratureNode>& sphere_quadrature(int resolution) {
  if (resolution < 1) throw InputError("sphere_quadrature: resolution must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::vector<QuadratureNode>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(resolution);
  if (it == cache.end()) it = cache.emplace(resolution, build_quadrature(resolution)).first;
  return it->second;
}

Rgb sh_reconstruct(const ShTripled& s, const Vec3& d) {
  ShVectord y;
  detail::eval_basis(d.x(), d.y(), d.z(), y.data());
  return s.transpose() * y;
}

ImageRGB sh_to_latlong(const ShTripled& s, int width, int height) {
  if (width < 2 || height < 2) throw InputError("sh_to_latlong: width and height must be >= 2");
  ImageRGB image(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Vec2 uv((x + 0.5) / width, (y + 0.5) / height);
      image(x, y) = sh_reconstruct(s, latlong_to_direction(uv)).cast<float>();
    }
  }
  return image;
}

}  // namespace lifedit

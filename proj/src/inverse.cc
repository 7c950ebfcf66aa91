#include "lifedit/inverse.h"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "lifedit/errors.h"
#include "lifedit/geometry.h"
#include "lifedit/material.h"
#include "lifedit/parallel.h"
#include "lifedit/random.h"

namespace lifedit {

void validate_views(const ViewSet& views) {
  if (views.empty()) throw InputError("view set is empty");
  for (std::size_t k = 0; k < views.size(); ++k) {
    const View& v = views[k];
    const int w = v.camera.width();
    const int h = v.camera.height();
    if (v.image.width() != w || v.image.height() != h) {
      std::ostringstream msg;
      msg << "view " << k << ": image is " << v.image.width() << "x" << v.image.height()
          << " but its camera is " << w << "x" << h;
      throw InputError(msg.str());
    }
    if (v.mask.width() != w || v.mask.height() != h) {
      std::ostringstream msg;
      msg << "view " << k << ": mask size differs from its camera";
      throw InputError(msg.str());
    }
    for (const Pixel& p : v.mask.pixels()) {
      for (int c = 0; c < 3; ++c) {
        if (p[c] != 0.0f && p[c] != 1.0f) {
          throw InputError("view " + std::to_string(k) + ": mask is not binary");
        }
      }
    }
  }
}

namespace {

// Indices of items grouped by texel, preserving input order inside a group.
struct TexelBuckets {
  std::vector<int> offsets;  // size texel_count + 1
  std::vector<int> items;

  template <typename TexelOf>
  TexelBuckets(int texel_count, std::size_t n, TexelOf&& texel_of) : offsets(texel_count + 1, 0) {
    for (std::size_t i = 0; i < n; ++i) ++offsets[texel_of(i) + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    items.resize(n);
    std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t i = 0; i < n; ++i) items[cursor[texel_of(i)]++] = static_cast<int>(i);
  }

  int count(int texel) const { return offsets[texel + 1] - offsets[texel]; }
};

// Calls fn(view, pixel index, hit) for every masked pixel whose primary ray
// hits the mesh. Pixels are visited in parallel; fn must only write to slots
// keyed by (view, pixel).
template <typename Fn>
void for_each_masked_hit(const Scene& scene, const ViewSet& views, Fn&& fn) {
  for (std::size_t k = 0; k < views.size(); ++k) {
    const View& view = views[k];
    const std::size_t w = static_cast<std::size_t>(view.camera.width());
    parallel_for(view.image.pixel_count(), [&](std::size_t idx) {
      const int x = static_cast<int>(idx % w);
      const int y = static_cast<int>(idx / w);
      if (view.mask(x, y)[0] < 0.5f) return;
      const Ray ray = view.camera.pixel_ray(x, y);
      const auto hit = scene.geom().intersect(ray);
      if (!hit) return;
      fn(k, idx, ray, *hit);
    });
  }
}

void summarize_residuals(FitReport& report, const std::vector<double>& abs_residuals) {
  if (abs_residuals.empty()) return;
  double sum = 0.0, mx = 0.0;
  for (double r : abs_residuals) {
    sum += r;
    mx = std::max(mx, r);
  }
  report.mean_abs_residual = sum / static_cast<double>(abs_residuals.size());
  report.max_abs_residual = mx;
}

}  // namespace

AlbedoEstimate estimate_albedo(const Scene& scene, const ViewSet& views, int resolution,
                               int iterations, double step, std::uint64_t seed) {
  if (iterations < 0) throw InputError("estimate_albedo: iterations must be >= 0");
  if (!(step > 0.0)) throw InputError("estimate_albedo: step must be > 0");
  if (resolution < 1) throw InputError("estimate_albedo: resolution must be >= 1");
  validate_views(views);

  struct Observation {
    int texel = -1;  // -1: pixel not used
    Rgb irradiance_over_pi = Rgb::Zero();
    Rgb value = Rgb::Zero();
  };
  std::vector<std::vector<Observation>> per_view(views.size());
  for (std::size_t k = 0; k < views.size(); ++k) per_view[k].resize(views[k].image.pixel_count());

  // Irradiance is albedo-independent, so it is estimated once per pixel.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for_each_masked_hit(scene, views, [&](std::size_t k, std::size_t idx, const Ray&,
                                        const HitRecord& hit) {
    const Vec3& n = hit.shading_normal;
    const Frame frame = Frame::from_normal(n);
    Sampler rng(derive_seed(seed, k), idx);
    Rgb e = Rgb::Zero();
    for (int s = 0; s < scene.spp; ++s) {
      const double u1 = rng.uniform();
      const double u2 = rng.uniform();
      const Vec3 local = uniform_hemisphere(u1, u2);
      if (local.z() <= 0.0) continue;
      const Vec3 wi = frame.to_world(local);
      if (scene.geom().occluded(hit.point, wi, kInf)) continue;
      e += scene.environment.lookup(wi) * (local.z() * 2.0 * kPi);
    }
    Observation& obs = per_view[k][idx];
    obs.texel = texel_index(hit.uv, resolution);
    obs.irradiance_over_pi = e / (scene.spp * kPi);
    const std::size_t w = static_cast<std::size_t>(views[k].camera.width());
    obs.value = views[k].image(static_cast<int>(idx % w), static_cast<int>(idx / w)).cast<double>();
  });

  std::vector<Observation> obs;
  for (auto& v : per_view) {
    for (auto& o : v) {
      if (o.texel >= 0) obs.push_back(o);
    }
  }
  per_view.clear();

  const int texel_count = resolution * resolution;
  const TexelBuckets buckets(texel_count, obs.size(), [&](std::size_t i) { return obs[i].texel; });

  std::vector<Rgb> albedo(texel_count);
  for (int t = 0; t < texel_count; ++t) {
    Sampler rng(seed, static_cast<std::uint64_t>(t));
    for (int c = 0; c < 3; ++c) albedo[t][c] = 0.2 + 0.6 * rng.uniform();
  }

  auto loss = [&] {
    double sum = 0.0;
    for (const Observation& o : obs) {
      sum += (albedo[o.texel].cwiseProduct(o.irradiance_over_pi) - o.value).cwiseAbs().sum();
    }
    return obs.empty() ? 0.0 : sum / (3.0 * static_cast<double>(obs.size()));
  };

  FitReport report;
  report.initial_loss = loss();
  report.loss_history.push_back(report.initial_loss);
  for (int it = 0; it < iterations; ++it) {
    parallel_for(static_cast<std::size_t>(texel_count), [&](std::size_t t) {
      const int n = buckets.count(static_cast<int>(t));
      if (n == 0) return;
      Rgb grad = Rgb::Zero();
      for (int q = buckets.offsets[t]; q < buckets.offsets[t + 1]; ++q) {
        const Observation& o = obs[buckets.items[q]];
        const Rgb residual = albedo[t].cwiseProduct(o.irradiance_over_pi) - o.value;
        for (int c = 0; c < 3; ++c) {
          // Subgradient of |r| at r = 0 is taken as 0.
          const double sign = residual[c] > 0.0 ? 1.0 : (residual[c] < 0.0 ? -1.0 : 0.0);
          grad[c] += sign * o.irradiance_over_pi[c];
        }
      }
      albedo[t] = (albedo[t] - step * grad / n).cwiseMax(0.0).cwiseMin(1.0);
    });
    report.loss_history.push_back(loss());
  }
  report.iterations = iterations;
  report.final_loss = report.loss_history.back();

  Texture texture(ImageRGB(resolution, resolution));
  report.observation_counts.resize(texel_count);
  report.texel_rms_residual.assign(texel_count, 0.0);
  for (int t = 0; t < texel_count; ++t) {
    texture.set_texel(t % resolution, t / resolution, albedo[t]);
    const int n = buckets.count(t);
    report.observation_counts[t] = n;
    (n > 0 ? report.observed_texels : report.unobserved_texels)++;
  }
  std::vector<double> abs_residuals;
  abs_residuals.reserve(obs.size() * 3);
  for (int t = 0; t < texel_count; ++t) {
    double sq = 0.0;
    for (int q = buckets.offsets[t]; q < buckets.offsets[t + 1]; ++q) {
      const Observation& o = obs[buckets.items[q]];
      const Rgb r = albedo[t].cwiseProduct(o.irradiance_over_pi) - o.value;
      sq += r.squaredNorm();
      for (int c = 0; c < 3; ++c) abs_residuals.push_back(std::abs(r[c]));
    }
    if (buckets.count(t) > 0) report.texel_rms_residual[t] = std::sqrt(sq / (3.0 * buckets.count(t)));
  }
  summarize_residuals(report, abs_residuals);
  return {std::move(texture), std::move(report)};
}

TexelSystem::TexelSystem() : atb(ShTripled::Zero()) {
  for (auto& m : ata) m.setZero();
}

void TexelSystem::add(const ShTripled& brdf, const Rgb& value) {
  for (int c = 0; c < 3; ++c) {
    ata[c].selfadjointView<Eigen::Lower>().rankUpdate(brdf.col(c));
    atb.col(c) += brdf.col(c) * value[c];
  }
  ++count;
}

ShTripled TexelSystem::solve(double lambda, const ShTripled& prior) const {
  using Mat = Eigen::Matrix<double, kShCoeffCount, kShCoeffCount>;
  ShTripled out;
  for (int c = 0; c < 3; ++c) {
    Mat a = ata[c].selfadjointView<Eigen::Lower>();
    const ShVectord b = atb.col(c) + lambda * prior.col(c);
    if (lambda > 0.0) {
      a.diagonal().array() += lambda;
      Eigen::LLT<Mat> llt(a);
      if (llt.info() != Eigen::Success) throw NumericalError("normal matrix is not positive definite");
      out.col(c) = llt.solve(b);
    } else {
      Eigen::FullPivLU<Mat> lu(a);
      if (lu.rank() < kShCoeffCount) {
        throw NumericalError("singular normal matrix (rank " + std::to_string(lu.rank()) +
                             ") in channel " + std::to_string(c) + " with lambda = 0");
      }
      out.col(c) = lu.solve(b);
    }
  }
  return out;
}

ShTripled fit_texel_lif(std::span<const LifObservation> observations, double lambda,
                        const ShTripled& prior) {
  if (lambda < 0.0) throw InputError("lambda must be >= 0");
  if (observations.empty()) return prior;
  TexelSystem system;
  for (const LifObservation& o : observations) system.add(o.brdf, o.value);
  return system.solve(lambda, prior);
}

LifFit fit_lif(const Scene& scene, const ViewSet& views, const Texture& albedo, int resolution,
               double lambda, const LifTexture& prior, int n_brdf_samples, std::uint64_t seed) {
  if (!(lambda >= 0.0)) throw InputError("fit_lif: lambda must be >= 0");
  if (prior.resolution() != resolution) {
    throw InputError("fit_lif: prior resolution " + std::to_string(prior.resolution()) +
                     " does not match requested resolution " + std::to_string(resolution));
  }
  if (n_brdf_samples < 1) throw InputError("fit_lif: n_brdf_samples must be >= 1");
  validate_views(views);

  const Material training = Material::diffuse(albedo);

  struct Observation {
    int texel = -1;
    ShTriplef brdf;
    Pixel value;
  };
  std::vector<std::vector<Observation>> per_view(views.size());
  for (std::size_t k = 0; k < views.size(); ++k) per_view[k].resize(views[k].image.pixel_count());

  for_each_masked_hit(scene, views, [&](std::size_t k, std::size_t idx, const Ray& ray,
                                        const HitRecord& hit) {
    Observation& o = per_view[k][idx];
    o.texel = texel_index(hit.uv, resolution);
    o.brdf = project_brdf_slice(training, hit, -ray.dir, n_brdf_samples,
                                derive_seed(derive_seed(seed, k), idx))
                 .cast<float>();
    const std::size_t w = static_cast<std::size_t>(views[k].camera.width());
    o.value = views[k].image(static_cast<int>(idx % w), static_cast<int>(idx / w));
  });

  std::vector<Observation> obs;
  for (auto& v : per_view) {
    for (auto& o : v) {
      if (o.texel >= 0) obs.push_back(o);
    }
    v.clear();
    v.shrink_to_fit();
  }

  const int texel_count = resolution * resolution;
  const TexelBuckets buckets(texel_count, obs.size(), [&](std::size_t i) { return obs[i].texel; });

  LifFit fit{LifTexture(resolution), {}};
  FitReport& report = fit.report;
  report.iterations = 1;
  report.observation_counts.resize(texel_count);
  report.texel_rms_residual.assign(texel_count, 0.0);
  std::vector<double> texel_abs_sum(texel_count, 0.0);
  std::vector<double> texel_abs_max(texel_count, 0.0);
  std::vector<double> texel_prior_abs_sum(texel_count, 0.0);

  parallel_for(static_cast<std::size_t>(texel_count), [&](std::size_t ts) {
    const int t = static_cast<int>(ts);
    const ShTripled prior_t = prior.coeffs(t).cast<double>();
    if (buckets.count(t) == 0) {
      if (prior.valid(t)) fit.lif.set(t, prior.coeffs(t));
      return;
    }
    TexelSystem system;
    for (int q = buckets.offsets[t]; q < buckets.offsets[t + 1]; ++q) {
      const Observation& o = obs[buckets.items[q]];
      system.add(o.brdf.cast<double>(), o.value.cast<double>());
    }
    ShTripled solution;
    try {
      solution = system.solve(lambda, prior_t);
    } catch (const NumericalError& e) {
      throw NumericalError("texel " + std::to_string(t) + ": " + e.what());
    }
    fit.lif.set(t, solution);

    const ShTripled stored = fit.lif.coeffs(t).cast<double>();
    double sq = 0.0, abs_sum = 0.0, abs_max = 0.0, prior_abs_sum = 0.0;
    for (int q = buckets.offsets[t]; q < buckets.offsets[t + 1]; ++q) {
      const Observation& o = obs[buckets.items[q]];
      const ShTripled f = o.brdf.cast<double>();
      const Rgb r = sh_dot(f, stored) - o.value.cast<double>();
      prior_abs_sum += (sh_dot(f, prior_t) - o.value.cast<double>()).cwiseAbs().sum();
      sq += r.squaredNorm();
      abs_sum += r.cwiseAbs().sum();
      abs_max = std::max(abs_max, r.cwiseAbs().maxCoeff());
    }
    texel_abs_max[t] = abs_max;
    report.texel_rms_residual[t] = std::sqrt(sq / (3.0 * buckets.count(t)));
    texel_abs_sum[t] = abs_sum;
    texel_prior_abs_sum[t] = prior_abs_sum;
  });

  double total_abs = 0.0, total_prior_abs = 0.0, max_abs = 0.0;
  for (int t = 0; t < texel_count; ++t) {
    const int n = buckets.count(t);
    report.observation_counts[t] = n;
    (n > 0 ? report.observed_texels : report.unobserved_texels)++;
    total_abs += texel_abs_sum[t];
    total_prior_abs += texel_prior_abs_sum[t];
    max_abs = std::max(max_abs, texel_abs_max[t]);
  }
  // Losses are mean absolute residuals: initial with the prior, final with
  // the fitted coefficients.
  const double denom = obs.empty() ? 1.0 : 3.0 * static_cast<double>(obs.size());
  const double loss = total_abs / denom;
  report.initial_loss = total_prior_abs / denom;
  report.final_loss = loss;
  report.loss_history = {report.initial_loss, loss};
  report.mean_abs_residual = loss;
  report.max_abs_residual = max_abs;
  return fit;
}

}  // namespace lifedit

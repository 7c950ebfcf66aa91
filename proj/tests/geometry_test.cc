#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lifedit/demo_scene.h"
#include "lifedit/errors.h"
#include "lifedit/geometry.h"
#include "lifedit/random.h"

namespace lifedit {
namespace {

// Independent ray/triangle oracle: plane intersection plus edge-function
// inside test, no shared code with the library.
bool oracle_hit(const Vec3& o, const Vec3& d, const Vec3& a, const Vec3& b, const Vec3& c,
                double& t) {
  const Vec3 n = (b - a).cross(c - a);
  const double denom = n.dot(d);
  if (std::abs(denom) < 1e-14) return false;
  t = n.dot(a - o) / denom;
  if (t < 0.0) return false;
  const Vec3 p = o + t * d;
  const double e0 = n.dot((b - a).cross(p - a));
  const double e1 = n.dot((c - b).cross(p - b));
  const double e2 = n.dot((a - c).cross(p - c));
  return e0 >= 0 && e1 >= 0 && e2 >= 0;
}

std::optional<std::pair<double, int>> brute_force(const TriangleMesh& m, const Vec3& o,
                                                  const Vec3& d) {
  std::optional<std::pair<double, int>> best;
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    const auto& tri = m.triangles[i];
    double t;
    if (oracle_hit(o, d, m.positions[tri[0]], m.positions[tri[1]], m.positions[tri[2]], t) &&
        (!best || t < best->first)) {
      best = {t, static_cast<int>(i)};
    }
  }
  return best;
}

TriangleMesh single_triangle() {
  TriangleMesh m;
  m.positions = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.normals = {{0, 0, 1}, {0, 0, 1}, {0, 0, 1}};
  m.uvs = {{0, 0}, {1, 0}, {0, 1}};
  m.triangles = {{0, 1, 2}};
  return m;
}

TriangleMesh unit_quad() {
  TriangleMesh m;
  m.positions = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  m.normals.assign(4, Vec3::UnitZ());
  m.uvs = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  return m;
}

// Jittered point cloud mesh with ~5k triangles and many overlaps.
TriangleMesh random_soup(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1), s(-0.08, 0.08);
  TriangleMesh m;
  for (int i = 0; i < count; ++i) {
    const Vec3 c(u(rng), u(rng), u(rng));
    for (int k = 0; k < 3; ++k) {
      m.positions.push_back(c + Vec3(s(rng), s(rng), s(rng)));
      m.normals.push_back(Vec3::UnitZ());
    }
    m.triangles.push_back({3 * i, 3 * i + 1, 3 * i + 2});
  }
  return m;
}

void compare_with_brute_force(const TriangleMesh& mesh, int rays, std::uint64_t seed) {
  const AcceleratedGeometry g = build_geometry(mesh);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::normal_distribution<double> n;
  int hits = 0;
  for (int r = 0; r < rays; ++r) {
    const Vec3 o(u(rng), u(rng), u(rng) + 2.0);
    // Aim towards the mesh half of the time.
    const Vec3 d = (r % 2 == 0 ? Vec3(Vec3(u(rng), u(rng), 0) * 0.5 - o) : Vec3(n(rng), n(rng), n(rng)))
                       .normalized();
    const auto expected = brute_force(mesh, o, d);
    const auto hit = g.intersect(Ray{o, d});
    ASSERT_EQ(expected.has_value(), hit.has_value()) << "ray " << r;
    if (!hit) continue;
    ++hits;
    EXPECT_NEAR(hit->t, expected->first, 1e-9 * (1 + expected->first)) << "ray " << r;
    EXPECT_EQ(g.occluded(o, d, std::numeric_limits<double>::infinity()),
              expected->first > g.epsilon());
  }
  EXPECT_GT(hits, rays / 10);
}

TEST(Intersect, SingleTriangleBruteForce) { compare_with_brute_force(single_triangle(), 10000, 1); }

TEST(Intersect, QuadBruteForce) { compare_with_brute_force(unit_quad(), 10000, 2); }

TEST(Intersect, TriangleSoupBruteForce) { compare_with_brute_force(random_soup(5000, 3), 1000, 3); }

TEST(Intersect, RayFromAbove) {
  const AcceleratedGeometry g = build_geometry(single_triangle());
  const auto hit = g.intersect(Ray{Vec3(0.2, 0.2, 3.0), -Vec3::UnitZ()});
  ASSERT_TRUE(hit);
  EXPECT_NEAR(hit->t, 3.0, 1e-12);
  EXPECT_NEAR((hit->geometric_normal - Vec3::UnitZ()).norm(), 0.0, 1e-12);
  EXPECT_NEAR(hit->uv.x(), 0.2, 1e-12);
  EXPECT_NEAR(hit->uv.y(), 0.2, 1e-12);
  EXPECT_FALSE(g.intersect(Ray{Vec3(0.2, 0.2, 3.0), Vec3::UnitZ()}));
}

TEST(Intersect, RespectsRayInterval) {
  const AcceleratedGeometry g = build_geometry(single_triangle());
  Ray r{Vec3(0.2, 0.2, 3.0), -Vec3::UnitZ()};
  r.t_max = 2.0;
  EXPECT_FALSE(g.intersect(r));
  r.t_max = 4.0;
  r.t_min = 3.5;
  EXPECT_FALSE(g.intersect(r));
}

TEST(Intersect, TieGoesToLowerTriangle) {
  TriangleMesh m = single_triangle();
  m.triangles = {{0, 1, 2}, {0, 1, 2}};
  const AcceleratedGeometry g = build_geometry(m);
  const auto hit = g.intersect(Ray{Vec3(0.1, 0.1, 1.0), -Vec3::UnitZ()});
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->triangle, 0);
}

TEST(Intersect, ShadingNormalMatchesAnalyticSphere) {
  const TriangleMesh mesh = make_sphere_on_plane(64, 32);
  const AcceleratedGeometry g = build_geometry(mesh);
  const Vec3 centre(0, 1, 0);
  Sampler rng(5);
  int checked = 0;
  while (checked < 1000) {
    const Vec3 target = centre + 0.95 * uniform_sphere(rng.uniform(), rng.uniform());
    const Vec3 origin = centre + 3.0 * uniform_sphere(rng.uniform(), rng.uniform());
    const auto hit = g.intersect(Ray{origin, (target - origin).normalized()});
    ASSERT_TRUE(hit);
    if (hit->triangle < 2) continue;  // ground plane
    const Vec3 analytic = (hit->point - centre).normalized();
    const double angle = std::acos(std::clamp(analytic.dot(hit->shading_normal), -1.0, 1.0));
    EXPECT_LT(angle, 2.0 * kPi / 180.0);
    ++checked;
  }
}

TEST(Occluded, CoveringPlaneAndOpenSky) {
  TriangleMesh m = unit_quad();
  for (auto& p : m.positions) p = 4.0 * (p - Vec3(0.5, 0.5, 0)) + Vec3(0, 0, 1);
  const AcceleratedGeometry g = build_geometry(m);
  EXPECT_TRUE(g.occluded(Vec3(0, 0, 0), Vec3::UnitZ(), 10.0));
  EXPECT_FALSE(g.occluded(Vec3(0, 0, 0), Vec3::UnitZ(), 0.5));
  EXPECT_FALSE(g.occluded(Vec3(0, 0, 0), -Vec3::UnitZ(), 10.0));
  EXPECT_FALSE(g.occluded(Vec3(0, 0, 0), Vec3(1, 0, 0.01).normalized(), 10.0));
}

TEST(Occluded, SphereCapSolidAngle) {
  // A ground point at horizontal distance s from the sphere's contact point
  // sees the sphere as a cap of half-angle asin(r / dist).
  const AcceleratedGeometry g = build_geometry(make_sphere_on_plane(128, 64));
  const Vec3 p(1.5, 0.0, 0.0);
  const double dist = (Vec3(0, 1, 0) - p).norm();
  const double cap = 2.0 * kPi * (1.0 - std::sqrt(1.0 - 1.0 / (dist * dist)));
  const double expected_fraction = cap / (2.0 * kPi);

  Sampler rng(7);
  const int n = 1000000;
  int blocked = 0;
  for (int i = 0; i < n; ++i) {
    const Vec3 local = uniform_hemisphere(rng.uniform(), rng.uniform());
    const Vec3 d(local.x(), local.z(), local.y());  // hemisphere about +y
    if (g.occluded(p, d, std::numeric_limits<double>::infinity())) ++blocked;
  }
  const double fraction = static_cast<double>(blocked) / n;
  EXPECT_NEAR(fraction, expected_fraction, 0.01 * expected_fraction);
}

TEST(Geometry, RejectsInvalidMeshes) {
  TriangleMesh m = single_triangle();
  m.triangles = {{0, 1, 3}};
  EXPECT_THROW(build_geometry(m), InputError);
  EXPECT_THROW(build_geometry(TriangleMesh{}), InputError);
  m = single_triangle();
  m.normals[0] = Vec3(0, 0, 2);
  EXPECT_THROW(build_geometry(m), InputError);
}

TEST(Geometry, EpsilonScalesWithBounds) {
  const AcceleratedGeometry g = build_geometry(unit_quad());
  EXPECT_NEAR(g.epsilon(), 1e-4 * std::sqrt(2.0), 1e-15);
}

TEST(TexelSamples, UnitQuadResolutionFour) {
  const auto samples = texel_surface_samples(unit_quad(), 4);
  ASSERT_EQ(samples.size(), 16u);
  for (int k = 0; k < 16; ++k) {
    const TexelSample& s = samples[k];
    EXPECT_EQ(s.texel, k);
    const int i = k % 4, j = k / 4;
    EXPECT_NEAR(s.point.x(), (i + 0.5) / 4, 1e-12);
    EXPECT_NEAR(s.point.y(), (j + 0.5) / 4, 1e-12);
    EXPECT_NEAR(s.normal.z(), 1.0, 1e-12);
  }
}

TEST(TexelSamples, HalfCoverage) {
  const auto samples = texel_surface_samples(single_triangle(), 32);
  // Texel centres strictly below the diagonal plus the ones on it.
  EXPECT_NEAR(static_cast<double>(samples.size()) / (32 * 32), 0.5, 0.03);
}

TEST(TexelSamples, OverlapResolvesToLowestTriangle) {
  TriangleMesh m = unit_quad();
  // Second copy of the quad, lifted in z, listed first.
  const int base = 4;
  for (int k = 0; k < 4; ++k) {
    m.positions.push_back(m.positions[k] + Vec3(0, 0, 1));
    m.normals.push_back(Vec3::UnitZ());
    m.uvs.push_back(m.uvs[k]);
  }
  m.triangles.insert(m.triangles.begin(),
                     {{base, base + 1, base + 2}, {base, base + 2, base + 3}});
  for (const TexelSample& s : texel_surface_samples(m, 8)) {
    EXPECT_LT(s.triangle, 2);
    EXPECT_NEAR(s.point.z(), 1.0, 1e-12);
  }
}

TEST(TexelSamples, RequiresUvs) {
  TriangleMesh m = unit_quad();
  m.uvs.clear();
  EXPECT_THROW(texel_surface_samples(m, 8), InputError);
  EXPECT_THROW(texel_surface_samples(unit_quad(), 2), InputError);
}

TEST(TexelIndex, Layout) {
  EXPECT_EQ(texel_index(Vec2(0.0, 0.0), 4), 0);
  EXPECT_EQ(texel_index(Vec2(0.99, 0.0), 4), 3);
  EXPECT_EQ(texel_index(Vec2(0.0, 0.3), 4), 4);
  EXPECT_EQ(texel_index(Vec2(1.0, 1.0), 4), 15);
  EXPECT_EQ(texel_index(Vec2(-0.5, 2.0), 4), 12);
}

TEST(DemoScene, SphereChartsAreDisjoint) {
  const TriangleMesh m = make_sphere_on_plane();
  m.validate();
  const auto samples = texel_surface_samples(m, 64);
  for (const TexelSample& s : samples) {
    if (s.triangle < 2) {
      EXPECT_LT(s.uv.y(), 0.5);
      EXPECT_NEAR(s.point.y(), 0.0, 1e-12);
    } else {
      EXPECT_GT(s.uv.y(), 0.5);
      EXPECT_NEAR((s.point - Vec3(0, 1, 0)).norm(), 1.0, 0.01);
    }
  }
}

}  // namespace
}  // namespace lifedit

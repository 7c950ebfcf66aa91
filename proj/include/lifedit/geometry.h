#ifndef LIFEDIT_GEOMETRY_H_
#define LIFEDIT_GEOMETRY_H_

#include <array>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Geometry>

#include "lifedit/types.h"

namespace lifedit {

struct TriangleMesh {
  std::vector<Vec3> positions;
  std::vector<Vec3> normals;  // per vertex, unit
  std::vector<Vec2> uvs;      // per vertex; empty for UV-less meshes
  std::vector<std::array<int, 3>> triangles;

  bool has_uvs() const { return !uvs.empty(); }

  // Throws InputError unless indices are in range, normals are unit within
  // 1e-4 and there is at least one triangle.
  void validate() const;
};

struct Ray {
  Vec3 origin = Vec3::Zero();
  Vec3 dir = Vec3::UnitZ();
  double t_min = 0.0;
  double t_max = std::numeric_limits<double>::infinity();
};

struct HitRecord {
  Vec3 point;
  Vec3 geometric_normal;  // from the face winding, flipped into the shading hemisphere
  Vec3 shading_normal;    // interpolated vertex normal, renormalised
  Vec2 uv = Vec2::Zero();
  int triangle = -1;
  double t = 0.0;
  // Surface derivatives with respect to the UV parameterisation.
  Vec3 dpdu = Vec3::Zero();
  Vec3 dpdv = Vec3::Zero();
  bool has_uv_frame = false;
};

// Immutable BVH over a triangle mesh. Queries are read-only and thread-safe.
class AcceleratedGeometry {
 public:
  explicit AcceleratedGeometry(TriangleMesh mesh);

  const TriangleMesh& mesh() const { return mesh_; }
  const Eigen::AlignedBox3d& bounds() const { return bounds_; }

  // Self-intersection offset: 1e-4 times the bounding-box diagonal.
  double epsilon() const { return epsilon_; }

  // Nearest hit with t in [ray.t_min, ray.t_max]. Ties go to the lower
  // triangle index.
  std::optional<HitRecord> intersect(const Ray& ray) const;

  // True iff some triangle is hit with t in (epsilon(), t_max).
  bool occluded(const Vec3& origin, const Vec3& dir, double t_max) const;

  // Surface attributes at barycentric coordinates (b1, b2) of a triangle.
  HitRecord surface_point(int triangle, double b1, double b2) const;

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    Eigen::Vector3d lo, hi;
    int offset;  // first primitive for leaves, second child for interior nodes
    int count;   // 0 for interior nodes
    int axis;
  };

  int build(int begin, int end, int depth);
  template <bool kAnyHit>
  bool traverse(const Ray& ray, double& t_best, int& tri_best, double& b1, double& b2) const;

  TriangleMesh mesh_;
  Eigen::AlignedBox3d bounds_;
  double epsilon_ = 0.0;
  std::vector<Node> nodes_;
  std::vector<int> order_;  // primitive indices referenced by leaves
  std::vector<Vec3> centroids_;
  std::vector<Eigen::AlignedBox3d> prim_bounds_;
};

// Builds the acceleration structure. Throws InputError for invalid or empty
// meshes.
AcceleratedGeometry build_geometry(TriangleMesh mesh);

// Moller-Trumbore test. On hit stores t and barycentrics (b1, b2) of the
// second and third vertex.
bool intersect_triangle(const Vec3& origin, const Vec3& dir, const Vec3& p0, const Vec3& p1,
                        const Vec3& p2, double& t, double& b1, double& b2);

struct TexelSample {
  int texel;  // j * resolution + i, with i along u and j along v
  int triangle;
  Vec3 point;
  Vec3 normal;  // interpolated shading normal
  Vec2 uv;      // the texel centre
};

// One sample per texel whose centre lies inside some triangle's UV footprint,
// in increasing texel order. Overlapping charts resolve to the lowest triangle
// index. Throws InputError for UV-less meshes or resolution < 4.
std::vector<TexelSample> texel_surface_samples(const TriangleMesh& mesh, int resolution);

// Texel containing uv under the same layout, clamped to the grid.
int texel_index(const Vec2& uv, int resolution);

}  // namespace lifedit

#endif  // LIFEDIT_GEOMETRY_H_

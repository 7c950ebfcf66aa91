#include "lifedit/geometry.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lifedit/errors.h"

namespace lifedit {

namespace {

constexpr int kMaxLeafSize = 4;
constexpr int kBinCount = 16;
constexpr int kMaxDepth = 60;
constexpr int kStackSize = 128;

// Rounding slack for the slab test so that boxes never cull a triangle the
// exact test would accept.
constexpr double kSlabSlack = 1.0 + 4.0 * std::numeric_limits<double>::epsilon();

double surface_area(const Eigen::AlignedBox3d& box) {
  if (box.isEmpty()) return 0.0;
  const Vec3 d = box.sizes();
  return 2.0 * (d.x() * d.y() + d.y() * d.z() + d.z() * d.x());
}

bool slab_test(const Vec3& lo, const Vec3& hi, const Vec3& origin, const Vec3& inv_dir,
               double t_min, double t_max) {
  for (int a = 0; a < 3; ++a) {
    double t0 = (lo[a] - origin[a]) * inv_dir[a];
    double t1 = (hi[a] - origin[a]) * inv_dir[a];
    if (t0 > t1) std::swap(t0, t1);
    // 0 * inf happens when the origin lies on a slab plane of an axis-parallel
    // ray; treat that axis as unbounded.
    if (std::isnan(t0) || std::isnan(t1)) continue;
    t1 *= kSlabSlack;
    t_min = std::max(t_min, t0);
    t_max = std::min(t_max, t1);
    if (t_min > t_max) return false;
  }
  return true;
}

}  // namespace

void TriangleMesh::validate() const {
  if (triangles.empty()) throw InputError("mesh has no triangles");
  if (normals.size() != positions.size()) {
    throw InputError("mesh normal count does not match vertex count");
  }
  if (!uvs.empty() && uvs.size() != positions.size()) {
    throw InputError("mesh UV count does not match vertex count");
  }
  const int n = static_cast<int>(positions.size());
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    for (int idx : triangles[t]) {
      if (idx < 0 || idx >= n) {
        std::ostringstream msg;
        msg << "triangle " << t << " references vertex " << idx << " of " << n;
        throw InputError(msg.str());
      }
    }
  }
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (!(std::abs(normals[i].norm() - 1.0) <= 1e-4)) {
      std::ostringstream msg;
      msg << "vertex normal " << i << " is not unit length";
      throw InputError(msg.str());
    }
  }
}

bool intersect_triangle(const Vec3& origin, const Vec3& dir, const Vec3& p0, const Vec3& p1,
                        const Vec3& p2, double& t, double& b1, double& b2) {
  const Vec3 e1 = p1 - p0;
  const Vec3 e2 = p2 - p0;
  const Vec3 pvec = dir.cross(e2);
  const double det = e1.dot(pvec);
  if (det == 0.0) return false;
  const double inv_det = 1.0 / det;
  const Vec3 tvec = origin - p0;
  const double u = tvec.dot(pvec) * inv_det;
  if (u < 0.0 || u > 1.0) return false;
  const Vec3 qvec = tvec.cross(e1);
  const double v = dir.dot(qvec) * inv_det;
  if (v < 0.0 || u + v > 1.0) return false;
  t = e2.dot(qvec) * inv_det;
  b1 = u;
  b2 = v;
  return std::isfinite(t);
}

AcceleratedGeometry::AcceleratedGeometry(TriangleMesh mesh) : mesh_(std::move(mesh)) {
  mesh_.validate();
  const std::size_t n = mesh_.triangles.size();
  prim_bounds_.resize(n);
  centroids_.resize(n);
  bounds_.setEmpty();
  for (std::size_t t = 0; t < n; ++t) {
    Eigen::AlignedBox3d box;
    box.setEmpty();
    for (int idx : mesh_.triangles[t]) box.extend(mesh_.positions[idx]);
    prim_bounds_[t] = box;
    centroids_[t] = box.center();
    bounds_.extend(box);
  }
  epsilon_ = 1e-4 * bounds_.diagonal().norm();
  if (!(epsilon_ > 0.0)) throw InputError("mesh has zero extent");

  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * n);
  build(0, static_cast<int>(n), 0);
  prim_bounds_.clear();
  prim_bounds_.shrink_to_fit();
  centroids_.clear();
  centroids_.shrink_to_fit();
}

int AcceleratedGeometry::build(int begin, int end, int depth) {
  const int index = static_cast<int>(nodes_.size());
  nodes_.push_back({});

  Eigen::AlignedBox3d box, centroid_box;
  box.setEmpty();
  centroid_box.setEmpty();
  for (int i = begin; i < end; ++i) {
    box.extend(prim_bounds_[order_[i]]);
    centroid_box.extend(centroids_[order_[i]]);
  }
  const int count = end - begin;
  auto make_leaf = [&] {
    nodes_[index] = {box.min(), box.max(), begin, count, 0};
    return index;
  };
  if (count <= kMaxLeafSize || depth >= kMaxDepth) return make_leaf();

  int axis;
  centroid_box.sizes().maxCoeff(&axis);
  const double c_lo = centroid_box.min()[axis];
  const double extent = centroid_box.max()[axis] - c_lo;
  if (!(extent > 0.0)) return make_leaf();

  auto bin_of = [&](int prim) {
    const int b = static_cast<int>(kBinCount * (centroids_[prim][axis] - c_lo) / extent);
    return std::clamp(b, 0, kBinCount - 1);
  };

  std::array<Eigen::AlignedBox3d, kBinCount> bin_box;
  std::array<int, kBinCount> bin_count{};
  for (auto& b : bin_box) b.setEmpty();
  for (int i = begin; i < end; ++i) {
    const int b = bin_of(order_[i]);
    bin_box[b].extend(prim_bounds_[order_[i]]);
    ++bin_count[b];
  }

  // Sweep from the right to get suffix areas, then from the left.
  std::array<double, kBinCount> right_area{};
  std::array<int, kBinCount> right_count{};
  Eigen::AlignedBox3d acc;
  acc.setEmpty();
  int acc_count = 0;
  for (int b = kBinCount - 1; b > 0; --b) {
    acc.extend(bin_box[b]);
    acc_count += bin_count[b];
    right_area[b] = surface_area(acc);
    right_count[b] = acc_count;
  }
  acc.setEmpty();
  acc_count = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  int best_split = -1;
  for (int b = 1; b < kBinCount; ++b) {
    acc.extend(bin_box[b - 1]);
    acc_count += bin_count[b - 1];
    if (acc_count == 0 || right_count[b] == 0) continue;
    const double cost = surface_area(acc) * acc_count + right_area[b] * right_count[b];
    if (cost < best_cost) {
      best_cost = cost;
      best_split = b;
    }
  }

  int mid;
  if (best_split < 0) {
    mid = begin + count / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) { return centroids_[a][axis] < centroids_[b][axis]; });
  } else {
    const double leaf_cost = surface_area(box) * count;
    if (count <= 2 * kMaxLeafSize && best_cost * 0.125 + surface_area(box) >= leaf_cost) {
      return make_leaf();
    }
    mid = static_cast<int>(
        std::partition(order_.begin() + begin, order_.begin() + end,
                       [&](int prim) { return bin_of(prim) < best_split; }) -
        order_.begin());
  }

  build(begin, mid, depth + 1);
  const int right = build(mid, end, depth + 1);
  nodes_[index] = {box.min(), box.max(), right, 0, axis};
  return index;
}

template <bool kAnyHit>
bool AcceleratedGeometry::traverse(const Ray& ray, double& t_best, int& tri_best, double& b1,
                                   double& b2) const {
  const Vec3 inv_dir = ray.dir.cwiseInverse();
  int stack[kStackSize];
  int top = 0;
  stack[top++] = 0;
  bool found = false;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (!slab_test(node.lo, node.hi, ray.origin, inv_dir, ray.t_min, t_best)) continue;
    if (node.count > 0) {
      for (int i = node.offset; i < node.offset + node.count; ++i) {
        const int prim = order_[i];
        const auto& tri = mesh_.triangles[prim];
        double t, u, v;
        if (!intersect_triangle(ray.origin, ray.dir, mesh_.positions[tri[0]],
                                mesh_.positions[tri[1]], mesh_.positions[tri[2]], t, u, v)) {
          continue;
        }
        if constexpr (kAnyHit) {
          if (t > ray.t_min && t < ray.t_max) return true;
        } else {
          if (t < ray.t_min || t > t_best) continue;
          if (t == t_best && found && prim > tri_best) continue;
          t_best = t;
          tri_best = prim;
          b1 = u;
          b2 = v;
          found = true;
        }
      }
    } else {
      const int first = static_cast<int>(&node - nodes_.data()) + 1;
      const int second = node.offset;
      // Push the far child first so the near one is popped next.
      if (ray.dir[node.axis] < 0.0) {
        stack[top++] = first;
        stack[top++] = second;
      } else {
        stack[top++] = second;
        stack[top++] = first;
      }
    }
  }
  return found;
}

std::optional<HitRecord> AcceleratedGeometry::intersect(const Ray& ray) const {
  double t_best = ray.t_max;
  int tri = -1;
  double b1 = 0.0, b2 = 0.0;
  if (!traverse<false>(ray, t_best, tri, b1, b2)) return std::nullopt;
  HitRecord hit = surface_point(tri, b1, b2);
  hit.t = t_best;
  return hit;
}

bool AcceleratedGeometry::occluded(const Vec3& origin, const Vec3& dir, double t_max) const {
  Ray ray{origin, dir, epsilon_, t_max};
  double t_best = t_max;
  int tri = -1;
  double b1, b2;
  return traverse<true>(ray, t_best, tri, b1, b2);
}

HitRecord AcceleratedGeometry::surface_point(int triangle, double b1, double b2) const {
  const auto& tri = mesh_.triangles[triangle];
  const double b0 = 1.0 - b1 - b2;
  const Vec3& p0 = mesh_.positions[tri[0]];
  const Vec3& p1 = mesh_.positions[tri[1]];
  const Vec3& p2 = mesh_.positions[tri[2]];

  HitRecord hit;
  hit.triangle = triangle;
  hit.point = b0 * p0 + b1 * p1 + b2 * p2;
  const Vec3 e1 = p1 - p0;
  const Vec3 e2 = p2 - p0;
  Vec3 ng = e1.cross(e2);
  const double ng_len = ng.norm();
  Vec3 ns = b0 * mesh_.normals[tri[0]] + b1 * mesh_.normals[tri[1]] + b2 * mesh_.normals[tri[2]];
  const double ns_len = ns.norm();
  ns = ns_len > 1e-12 ? Vec3(ns / ns_len) : Vec3(ng / ng_len);
  ng = ng_len > 0.0 ? Vec3(ng / ng_len) : ns;
  if (ng.dot(ns) < 0.0) ng = -ng;
  hit.geometric_normal = ng;
  hit.shading_normal = ns;

  if (mesh_.has_uvs()) {
    const Vec2& t0 = mesh_.uvs[tri[0]];
    const Vec2& t1 = mesh_.uvs[tri[1]];
    const Vec2& t2 = mesh_.uvs[tri[2]];
    hit.uv = b0 * t0 + b1 * t1 + b2 * t2;
    const Vec2 d1 = t1 - t0;
    const Vec2 d2 = t2 - t0;
    const double det = d1.x() * d2.y() - d1.y() * d2.x();
    if (std::abs(det) > 1e-14) {
      const double inv = 1.0 / det;
      hit.dpdu = (d2.y() * e1 - d1.y() * e2) * inv;
      hit.dpdv = (-d2.x() * e1 + d1.x() * e2) * inv;
      hit.has_uv_frame = true;
    }
  }
  return hit;
}

AcceleratedGeometry build_geometry(TriangleMesh mesh) {
  return AcceleratedGeometry(std::move(mesh));
}

int texel_index(const Vec2& uv, int resolution) {
  const int i = std::clamp(static_cast<int>(std::floor(uv.x() * resolution)), 0, resolution - 1);
  const int j = std::clamp(static_cast<int>(std::floor(uv.y() * resolution)), 0, resolution - 1);
  return j * resolution + i;
}

std::vector<TexelSample> texel_surface_samples(const TriangleMesh& mesh, int resolution) {
  if (!mesh.has_uvs()) throw InputError("texel sampling requires a mesh with UVs");
  if (resolution < 4) throw InputError("texel resolution must be >= 4");
  mesh.validate();

  const std::size_t texel_count = static_cast<std::size_t>(resolution) * resolution;
  struct Assignment {
    int triangle = -1;
    double b1 = 0.0, b2 = 0.0;
  };
  std::vector<Assignment> assigned(texel_count);

  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto& tri = mesh.triangles[t];
    const Vec2& a = mesh.uvs[tri[0]];
    const Vec2& b = mesh.uvs[tri[1]];
    const Vec2& c = mesh.uvs[tri[2]];
    const double det = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
    if (std::abs(det) < 1e-18) continue;

    const double u_lo = std::min({a.x(), b.x(), c.x()});
    const double u_hi = std::max({a.x(), b.x(), c.x()});
    const double v_lo = std::min({a.y(), b.y(), c.y()});
    const double v_hi = std::max({a.y(), b.y(), c.y()});
    const int i0 = std::max(0, static_cast<int>(std::floor(u_lo * resolution - 0.5)));
    const int i1 = std::min(resolution - 1, static_cast<int>(std::ceil(u_hi * resolution - 0.5)));
    const int j0 = std::max(0, static_cast<int>(std::floor(v_lo * resolution - 0.5)));
    const int j1 = std::min(resolution - 1, static_cast<int>(std::ceil(v_hi * resolution - 0.5)));

    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) {
        Assignment& slot = assigned[static_cast<std::size_t>(j) * resolution + i];
        if (slot.triangle >= 0) continue;
        const Vec2 p((i + 0.5) / resolution, (j + 0.5) / resolution);
        const Vec2 ap = p - a;
        const double b1 = (ap.x() * (c.y() - a.y()) - ap.y() * (c.x() - a.x())) / det;
        const double b2 = ((b.x() - a.x()) * ap.y() - (b.y() - a.y()) * ap.x()) / det;
        constexpr double kEdge = -1e-12;
        if (b1 < kEdge || b2 < kEdge || 1.0 - b1 - b2 < kEdge) continue;
        slot = {t, b1, b2};
      }
    }
  }

  std::vector<TexelSample> samples;
  for (std::size_t idx = 0; idx < texel_count; ++idx) {
    const Assignment& slot = assigned[idx];
    if (slot.triangle < 0) continue;
    const auto& tri = mesh.triangles[slot.triangle];
    const double b0 = 1.0 - slot.b1 - slot.b2;
    TexelSample s;
    s.texel = static_cast<int>(idx);
    s.triangle = slot.triangle;
    s.point = b0 * mesh.positions[tri[0]] + slot.b1 * mesh.positions[tri[1]] +
              slot.b2 * mesh.positions[tri[2]];
    Vec3 n = b0 * mesh.normals[tri[0]] + slot.b1 * mesh.normals[tri[1]] +
             slot.b2 * mesh.normals[tri[2]];
    if (n.norm() < 1e-12) {
      n = (mesh.positions[tri[1]] - mesh.positions[tri[0]])
              .cross(mesh.positions[tri[2]] - mesh.positions[tri[0]]);
    }
    s.normal = n.normalized();
    const int i = static_cast<int>(idx % resolution);
    const int j = static_cast<int>(idx / resolution);
    s.uv = Vec2((i + 0.5) / resolution, (j + 0.5) / resolution);
    samples.push_back(s);
  }
  return samples;
}

}  // namespace lifedit

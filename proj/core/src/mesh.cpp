#include "surfgrf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

namespace surfgrf {

namespace {

Vec3 bilinear(const std::array<Vec3, 4>& c, double u, double v) {
  return 0.25 * ((1 - u) * (1 - v) * c[0] + (1 + u) * (1 - v) * c[1] +
                 (1 + u) * (1 + v) * c[2] + (1 - u) * (1 + v) * c[3]);
}

Vec3 quad_normal_at_center(const std::array<Vec3, 4>& c) {
  const Vec3 tu = 0.25 * ((c[1] - c[0]) + (c[2] - c[3]));
  const Vec3 tv = 0.25 * ((c[3] - c[0]) + (c[2] - c[1]));
  return tu.cross(tv);
}

void orient_outward(const AnalyticSurface& surface, std::vector<Vec3>& vertices,
                    std::array<int, 4>& quad) {
  std::array<Vec3, 4> c = {vertices[quad[0]], vertices[quad[1]],
                           vertices[quad[2]], vertices[quad[3]]};
  const Vec3 center = bilinear(c, 0.0, 0.0);
  if (quad_normal_at_center(c).dot(surface.distance_gradient(center)) < 0.0)
    std::swap(quad[1], quad[3]);
}

}  // namespace

SurfaceMesh base_mesh(const AnalyticSurface& surface) {
  SurfaceMesh mesh{surface, {}, {}, 0};
  if (surface.kind() == AnalyticSurface::Kind::Sphere) {
    const double a = surface.radius() / std::sqrt(3.0);
    for (int i = 0; i < 8; ++i)
      mesh.vertices.emplace_back((i & 1) ? a : -a, (i & 2) ? a : -a,
                                 (i & 4) ? a : -a);
    mesh.quads = {
        {0, 2, 6, 4},  // x = -a
        {1, 5, 7, 3},  // x = +a
        {0, 4, 5, 1},  // y = -a
        {2, 3, 7, 6},  // y = +a
        {0, 1, 3, 2},  // z = -a
        {4, 6, 7, 5},  // z = +a
    };
  } else {
    const int nphi = 20, ntheta = 4;
    const double R = surface.major_radius(), r = surface.minor_radius();
    for (int i = 0; i < nphi; ++i) {
      const double phi = 2.0 * M_PI * i / nphi;
      for (int j = 0; j < ntheta; ++j) {
        const double theta = 2.0 * M_PI * j / ntheta;
        const double w = R + r * std::cos(theta);
        mesh.vertices.emplace_back(w * std::cos(phi), r * std::sin(theta),
                                   w * std::sin(phi));
      }
    }
    auto id = [&](int i, int j) { return (i % nphi) * ntheta + (j % ntheta); };
    for (int i = 0; i < nphi; ++i)
      for (int j = 0; j < ntheta; ++j)
        mesh.quads.push_back(
            {id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  }
  for (auto& q : mesh.quads) orient_outward(surface, mesh.vertices, q);
  return mesh;
}

SurfaceMesh refine(const SurfaceMesh& mesh) {
  SurfaceMesh out{mesh.surface, mesh.vertices, {}, mesh.level + 1};
  std::map<std::pair<int, int>, int> edge_midpoint;
  auto midpoint_id = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto it = edge_midpoint.find(key);
    if (it != edge_midpoint.end()) return it->second;
    const std::array<Vec3, 2> pts = {mesh.vertices[a], mesh.vertices[b]};
    const std::array<double, 2> w = {0.5, 0.5};
    out.vertices.push_back(mesh.surface.manifold_average(pts, w));
    const int idx = static_cast<int>(out.vertices.size()) - 1;
    edge_midpoint.emplace(key, idx);
    return idx;
  };
  out.quads.reserve(4 * mesh.quads.size());
  // transfinite stencil for the new cell-center vertex
  static constexpr std::array<double, 8> center_w = {-0.25, -0.25, -0.25, -0.25,
                                                     0.5, 0.5, 0.5, 0.5};
  for (const auto& q : mesh.quads) {
    const int e01 = midpoint_id(q[0], q[1]);
    const int e12 = midpoint_id(q[1], q[2]);
    const int e23 = midpoint_id(q[2], q[3]);
    const int e30 = midpoint_id(q[3], q[0]);
    const std::array<Vec3, 8> stencil = {
        mesh.vertices[q[0]], mesh.vertices[q[1]], mesh.vertices[q[2]],
        mesh.vertices[q[3]], out.vertices[e01],   out.vertices[e12],
        out.vertices[e23],   out.vertices[e30]};
    out.vertices.push_back(mesh.surface.manifold_average(stencil, center_w));
    const int cc = static_cast<int>(out.vertices.size()) - 1;
    out.quads.push_back({q[0], e01, cc, e30});
    out.quads.push_back({e01, q[1], e12, cc});
    out.quads.push_back({cc, e12, q[2], e23});
    out.quads.push_back({e30, cc, e23, q[3]});
  }
  return out;
}

SurfaceMesh refined_mesh(const AnalyticSurface& surface, int level) {
  SurfaceMesh mesh = base_mesh(surface);
  for (int i = 0; i < level; ++i) mesh = refine(mesh);
  return mesh;
}

double mesh_size(const SurfaceMesh& mesh) {
  double h = 0.0;
  for (const auto& q : mesh.quads)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        h = std::max(h,
                     (mesh.vertices[q[i]] - mesh.vertices[q[j]]).norm());
  return h;
}

double sigma_sup_error(const SurfaceMesh& mesh, int grid_points) {
  double sup = 0.0;
  for (int q = 0; q < static_cast<int>(mesh.quads.size()); ++q) {
    const auto corners = mesh.quad_corners(q);
    for (int i = 0; i < grid_points; ++i) {
      const double u = -1.0 + 2.0 * i / (grid_points - 1);
      for (int j = 0; j < grid_points; ++j) {
        const double v = -1.0 + 2.0 * j / (grid_points - 1);
        sup = std::max(sup,
                       std::abs(1.0 - area_ratio(mesh.surface, corners, u, v)));
      }
    }
  }
  return sup;
}

int edge_count(const SurfaceMesh& mesh) {
  std::map<std::pair<int, int>, int> edges;
  for (const auto& q : mesh.quads)
    for (int i = 0; i < 4; ++i)
      edges[std::minmax(q[i], q[(i + 1) % 4])]++;
  return static_cast<int>(edges.size());
}

void validate(const SurfaceMesh& mesh) {
  for (const auto& v : mesh.vertices)
    if (std::abs(mesh.surface.signed_distance(v)) > 1e-10)
      throw std::runtime_error("mesh vertex off surface");

  // directed edges: each undirected edge must appear once per direction
  std::map<std::pair<int, int>, int> directed;
  for (const auto& q : mesh.quads)
    for (int i = 0; i < 4; ++i) {
      const int a = q[i], b = q[(i + 1) % 4];
      if (a == b) throw std::runtime_error("degenerate quad edge");
      if (++directed[{a, b}] > 1)
        throw std::runtime_error("inconsistent quad orientation");
    }
  for (const auto& [e, n] : directed)
    if (directed.count({e.second, e.first}) == 0)
      throw std::runtime_error("edge not shared by two quads");

  const int V = static_cast<int>(mesh.vertices.size());
  const int F = static_cast<int>(mesh.quads.size());
  const int E = edge_count(mesh);
  const int chi =
      mesh.surface.kind() == AnalyticSurface::Kind::Sphere ? 2 : 0;
  if (V - E + F != chi) throw std::runtime_error("Euler characteristic");

  for (int q = 0; q < F; ++q) {
    const auto c = mesh.quad_corners(q);
    const Vec3 n = quad_normal_at_center(c);
    if (n.norm() <= 0.0) throw std::runtime_error("zero-area quad");
    const Vec3 center = bilinear(c, 0.0, 0.0);
    if (n.dot(mesh.surface.distance_gradient(center)) <= 0.0)
      throw std::runtime_error("inward-facing quad");
  }
}

PointLocation locate_point(const SurfaceMesh& mesh, const Vec3& p) {
  const Vec3 target = mesh.surface.closest_point(p);
  double best_dist = std::numeric_limits<double>::max();
  std::optional<PointLocation> best;
  for (int q = 0; q < static_cast<int>(mesh.quads.size()); ++q) {
    const auto c = mesh.quad_corners(q);
    // Gauss-Newton for the closest chart point to the target
    double u = 0.0, v = 0.0;
    for (int it = 0; it < 30; ++it) {
      const Vec3 x = bilinear(c, u, v);
      const Vec3 tu = 0.25 * ((1 - v) * (c[1] - c[0]) + (1 + v) * (c[2] - c[3]));
      const Vec3 tv = 0.25 * ((1 - u) * (c[3] - c[0]) + (1 + u) * (c[2] - c[1]));
      Eigen::Matrix2d g;
      g << tu.dot(tu), tu.dot(tv), tu.dot(tv), tv.dot(tv);
      const Eigen::Vector2d rhs(tu.dot(target - x), tv.dot(target - x));
      const Eigen::Vector2d step = g.ldlt().solve(rhs);
      u = std::clamp(u + step.x(), -1.2, 1.2);
      v = std::clamp(v + step.y(), -1.2, 1.2);
      if (step.norm() < 1e-14) break;
    }
    // near shared edges the unconstrained foot point can land slightly
    // outside every chart; clamp and keep the globally closest quad
    u = std::clamp(u, -1.0, 1.0);
    v = std::clamp(v, -1.0, 1.0);
    const double dist = (bilinear(c, u, v) - target).norm();
    if (dist < best_dist) {
      best_dist = dist;
      best = PointLocation{
          q, u, v,
          {0.25 * (1 - u) * (1 - v), 0.25 * (1 + u) * (1 - v),
           0.25 * (1 + u) * (1 + v), 0.25 * (1 - u) * (1 + v)}};
    }
  }
  if (!best || best_dist > mesh_size(mesh))
    throw PointLocationFailure("point could not be bracketed by any quad");
  return *best;
}

}  // namespace surfgrf

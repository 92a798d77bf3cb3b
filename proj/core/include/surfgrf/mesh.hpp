#pragma once

#include <array>
#include <optional>
#include <vector>

#include "surfgrf/surface.hpp"

namespace surfgrf {

/// Quadrilateral polyhedral approximation Gamma of an analytic surface.
/// All vertices lie on the exact surface; quads are stored counter-clockwise
/// as seen from outside.  Meshes are immutable after construction; refine()
/// returns a new mesh.
struct SurfaceMesh {
  AnalyticSurface surface;
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 4>> quads;
  int level = 0;

  std::array<Vec3, 4> quad_corners(int q) const {
    const auto& c = quads[q];
    return {vertices[c[0]], vertices[c[1]], vertices[c[2]], vertices[c[3]]};
  }
};

/// Initial mesh: inscribed cube (8 vertices, 6 quads) for the sphere,
/// structured 20x4 grid (80 vertices, 80 quads) for the torus.
SurfaceMesh base_mesh(const AnalyticSurface& surface);

/// Uniform refinement: each quad splits into 4.  New vertices are placed by
/// the surface's manifold average: geodesic edge midpoints and transfinite
/// cell centers (corners -1/4, edge midpoints +1/2).
SurfaceMesh refine(const SurfaceMesh& mesh);

SurfaceMesh refined_mesh(const AnalyticSurface& surface, int level);

/// h = max over quads of the max vertex-pair distance (diagonals included).
double mesh_size(const SurfaceMesh& mesh);

/// e_sigma = sup |1 - sigma| sampled on a grid_points x grid_points grid per
/// quad (endpoints included, so vertices are covered).
double sigma_sup_error(const SurfaceMesh& mesh, int grid_points = 5);

int edge_count(const SurfaceMesh& mesh);

/// Checks the closed-surface invariants: vertices on gamma, every edge
/// shared by exactly two quads with opposite orientation, Euler
/// characteristic 2 (sphere) or 0 (torus), positive quad areas and outward
/// orientation.  Throws std::runtime_error on violation.
void validate(const SurfaceMesh& mesh);

struct PointLocation {
  int quad;
  double u, v;                   // reference coordinates in [-1,1]^2
  std::array<double, 4> weights; // Q1 shape values at (u,v)
};

struct PointLocationFailure : std::runtime_error {
  explicit PointLocationFailure(const std::string& what)
      : std::runtime_error(what) {}
};

/// Locates the quad whose bilinear chart contains (the projection of) p and
/// returns the reference coordinates for Q1 interpolation.
PointLocation locate_point(const SurfaceMesh& mesh, const Vec3& p);

}  // namespace surfgrf

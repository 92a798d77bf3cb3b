#include <doctest.h>

#include <cmath>

#include "surfgrf/mesh.hpp"

using namespace surfgrf;

TEST_CASE("sphere refinement hierarchy") {
  const auto surface = AnalyticSurface::sphere(1.0);
  SurfaceMesh mesh = base_mesh(surface);
  const int expected_vertices[] = {8, 26, 98, 386, 1538, 6146};
  // frozen reference geometry of the refinement hierarchy
  const double expected_h[] = {1.633, 1.000, 0.541, 0.276, 0.139, 0.070};
  const double expected_es[] = {2.0000, 0.3032, 0.0778, 0.0194, 0.0048, 0.0012};
  for (int level = 0; level <= 5; ++level) {
    CAPTURE(level);
    CHECK(static_cast<int>(mesh.vertices.size()) == expected_vertices[level]);
    CHECK(mesh.level == level);
    validate(mesh);
    CHECK(mesh_size(mesh) == doctest::Approx(expected_h[level]).epsilon(5e-3));
    CHECK(sigma_sup_error(mesh) ==
          doctest::Approx(expected_es[level]).epsilon(5e-3));
    if (level < 5) mesh = refine(mesh);
  }
}

TEST_CASE("mesh size halves under refinement") {
  const auto surface = AnalyticSurface::sphere(1.0);
  SurfaceMesh mesh = refined_mesh(surface, 1);
  double h = mesh_size(mesh);
  for (int level = 2; level <= 4; ++level) {
    mesh = refine(mesh);
    const double h2 = mesh_size(mesh);
    CHECK(h2 / h > 0.45);
    CHECK(h2 / h < 0.55);
    h = h2;
  }
}

TEST_CASE("sigma error decays quadratically") {
  const auto surface = AnalyticSurface::sphere(1.0);
  double prev = sigma_sup_error(refined_mesh(surface, 2));
  for (int level = 3; level <= 4; ++level) {
    const double cur = sigma_sup_error(refined_mesh(surface, level));
    const double ratio = prev / cur;
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
    prev = cur;
  }
}

TEST_CASE("torus refinement hierarchy") {
  const auto surface = AnalyticSurface::torus(2.0, 0.5);
  SurfaceMesh mesh = base_mesh(surface);
  CHECK(mesh.vertices.size() == 80);
  CHECK(mesh.quads.size() == 80);
  for (int level = 0; level <= 3; ++level) {
    CAPTURE(level);
    CHECK(static_cast<int>(mesh.vertices.size()) == 80 * (1 << (2 * level)));
    validate(mesh);
    if (level < 3) mesh = refine(mesh);
  }
  CHECK(mesh.vertices.size() == 5120);
  // frozen torus mesh sizes at levels 2 and 3
  CHECK(mesh_size(mesh) == doctest::Approx(0.1386).epsilon(5e-3));
  CHECK(mesh_size(refined_mesh(surface, 2)) ==
        doctest::Approx(0.2757).epsilon(5e-3));
}

TEST_CASE("euler characteristic") {
  const auto sphere = refined_mesh(AnalyticSurface::sphere(1.0), 2);
  const auto torus = refined_mesh(AnalyticSurface::torus(2.0, 0.5), 1);
  CHECK(static_cast<int>(sphere.vertices.size()) - edge_count(sphere) +
            static_cast<int>(sphere.quads.size()) ==
        2);
  CHECK(static_cast<int>(torus.vertices.size()) - edge_count(torus) +
            static_cast<int>(torus.quads.size()) ==
        0);
}

TEST_CASE("point location") {
  const auto mesh = refined_mesh(AnalyticSurface::sphere(1.0), 3);

  SUBCASE("vertices locate with unit weight") {
    for (int vi : {0, 17, 100, 385}) {
      const auto loc = locate_point(mesh, mesh.vertices[vi]);
      Vec3 x = Vec3::Zero();
      double wmax = 0;
      for (int c = 0; c < 4; ++c) {
        x += loc.weights[c] * mesh.vertices[mesh.quads[loc.quad][c]];
        wmax = std::max(wmax, loc.weights[c]);
      }
      CHECK(wmax == doctest::Approx(1.0).epsilon(1e-9));
      CHECK((x - mesh.vertices[vi]).norm() < 1e-9);
    }
  }

  SUBCASE("interior points reproduce the projected target") {
    const Vec3 probes[] = {{0.3, 0.4, 0.86}, {-0.7, 0.1, -0.7}, {1.1, 0, 0}};
    for (const auto& p : probes) {
      const auto loc = locate_point(mesh, p);
      double wsum = 0;
      Vec3 x = Vec3::Zero();
      for (int c = 0; c < 4; ++c) {
        wsum += loc.weights[c];
        x += loc.weights[c] * mesh.vertices[mesh.quads[loc.quad][c]];
      }
      CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
      // chart point is within O(h^2) of the exact projection
      CHECK((x - mesh.surface.closest_point(p)).norm() < 0.01);
    }
  }
}

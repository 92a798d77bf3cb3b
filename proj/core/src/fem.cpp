#include "surfgrf/fem.hpp"

#include <cmath>

#include "surfgrf/quadrature.hpp"
#include "surfgrf/rng.hpp"

namespace surfgrf {

namespace {

void shape_values(double u, double v, std::array<double, 4>& n) {
  n = {0.25 * (1 - u) * (1 - v), 0.25 * (1 + u) * (1 - v),
       0.25 * (1 + u) * (1 + v), 0.25 * (1 - u) * (1 + v)};
}

// rows: basis functions, cols: d/du, d/dv
void shape_gradients(double u, double v, Eigen::Matrix<double, 4, 2>& g) {
  g << -0.25 * (1 - v), -0.25 * (1 - u),
        0.25 * (1 - v), -0.25 * (1 + u),
        0.25 * (1 + v),  0.25 * (1 + u),
       -0.25 * (1 + v),  0.25 * (1 - u);
}

struct ChartPoint {
  Vec3 x;
  Vec3 tu, tv;
  double area_element;  // |tu x tv|
};

ChartPoint chart_at(const std::array<Vec3, 4>& c, double u, double v) {
  ChartPoint p;
  std::array<double, 4> n;
  shape_values(u, v, n);
  p.x = n[0] * c[0] + n[1] * c[1] + n[2] * c[2] + n[3] * c[3];
  p.tu = 0.25 * ((1 - v) * (c[1] - c[0]) + (1 + v) * (c[2] - c[3]));
  p.tv = 0.25 * ((1 - u) * (c[3] - c[0]) + (1 + u) * (c[2] - c[1]));
  p.area_element = p.tu.cross(p.tv).norm();
  return p;
}

template <typename ElementKernel>
SpMat assemble(const SurfaceMesh& mesh, ElementKernel&& kernel) {
  const int n = static_cast<int>(mesh.vertices.size());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(16 * mesh.quads.size());
  for (int q = 0; q < static_cast<int>(mesh.quads.size()); ++q) {
    const Eigen::Matrix4d ke = kernel(mesh.quad_corners(q));
    const auto& ids = mesh.quads[q];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        triplets.emplace_back(ids[i], ids[j], ke(i, j));
  }
  SpMat m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace

Eigen::Matrix4d element_mass(const std::array<Vec3, 4>& corners,
                             int quad_order) {
  Eigen::Matrix4d ke = Eigen::Matrix4d::Zero();
  const auto rule = gauss_rule(quad_order);
  std::array<double, 4> n;
  for (const auto& gu : rule)
    for (const auto& gv : rule) {
      const auto p = chart_at(corners, gu.x, gv.x);
      shape_values(gu.x, gv.x, n);
      const double w = gu.w * gv.w * p.area_element;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ke(i, j) += w * n[i] * n[j];
    }
  return ke;
}

Eigen::Matrix4d element_stiffness(const std::array<Vec3, 4>& corners,
                                  int quad_order) {
  Eigen::Matrix4d ke = Eigen::Matrix4d::Zero();
  const auto rule = gauss_rule(quad_order);
  Eigen::Matrix<double, 4, 2> g;
  for (const auto& gu : rule)
    for (const auto& gv : rule) {
      const auto p = chart_at(corners, gu.x, gv.x);
      shape_gradients(gu.x, gv.x, g);
      Eigen::Matrix2d metric;
      metric << p.tu.dot(p.tu), p.tu.dot(p.tv), p.tu.dot(p.tv), p.tv.dot(p.tv);
      const Eigen::Matrix2d minv = metric.inverse();
      const double w = gu.w * gv.w * p.area_element;
      // grad_Gamma Phi_i . grad_Gamma Phi_j = (d Phi_i)^T g^{-1} (d Phi_j)
      ke += w * g * minv * g.transpose();
    }
  return ke;
}

SpMat assemble_mass(const SurfaceMesh& mesh) {
  return assemble(mesh,
                  [](const std::array<Vec3, 4>& c) { return element_mass(c); });
}

SpMat assemble_weighted_mass(const SurfaceMesh& mesh, int quad_order) {
  const auto& surface = mesh.surface;
  return assemble(mesh, [&](const std::array<Vec3, 4>& c) {
    Eigen::Matrix4d ke = Eigen::Matrix4d::Zero();
    const auto rule = gauss_rule(quad_order);
    std::array<double, 4> n;
    for (const auto& gu : rule)
      for (const auto& gv : rule) {
        const auto p = chart_at(c, gu.x, gv.x);
        shape_values(gu.x, gv.x, n);
        const double sigma = area_ratio(surface, c, gu.x, gv.x);
        const double w = gu.w * gv.w * p.area_element * sigma;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) ke(i, j) += w * n[i] * n[j];
      }
    return ke;
  });
}

SpMat assemble_stiffness(const SurfaceMesh& mesh) {
  return assemble(mesh, [](const std::array<Vec3, 4>& c) {
    return element_stiffness(c);
  });
}

CholeskyFactor::CholeskyFactor(const SpMat& m) {
  llt_.compute(m);
  if (llt_.info() != Eigen::Success)
    throw NotPositiveDefinite("sparse Cholesky failed: matrix not SPD");
}

Vector CholeskyFactor::solve(const Vector& b) const { return llt_.solve(b); }

Vector CholeskyFactor::apply_factor(const Vector& z) const {
  // P M P^T = L L^T  =>  M = (P^T L)(P^T L)^T, so G = P^T L.
  return llt_.permutationPinv() * (llt_.matrixL() * z).eval();
}

Vector solve_shifted(const SpMat& mass, const SpMat& stiffness, double kappa,
                     double mu, const Vector& b, double tol, int max_iter) {
  if (mu <= 0.0 && kappa <= 0.0)
    throw std::invalid_argument("solve_shifted: need mu > 0 or kappa > 0");
  SpMat op = stiffness + (mu + kappa * kappa) * mass;
  Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg;
  cg.setTolerance(tol);
  cg.setMaxIterations(max_iter < 0 ? 10 * op.rows() : max_iter);
  cg.compute(op);
  Vector u = cg.solve(b);
  if (cg.info() != Eigen::Success && b.norm() > 0.0 &&
      (op * u - b).norm() > tol * b.norm())
    throw NoConvergence("CG did not reach relative residual " +
                        std::to_string(tol));
  return u;
}

ShiftedSolverSet::ShiftedSolverSet(const SpMat& mass, const SpMat& stiffness,
                                   double kappa, std::span<const double> mus) {
  factors_.reserve(mus.size());
  for (const double mu : mus) {
    SpMat op = stiffness + (mu + kappa * kappa) * mass;
    auto f = std::make_unique<Eigen::SimplicialLLT<SpMat>>();
    f->compute(op);
    if (f->info() != Eigen::Success)
      throw NotPositiveDefinite("shifted operator not SPD at mu = " +
                                std::to_string(mu));
    factors_.push_back(std::move(f));
  }
}

Vector ShiftedSolverSet::solve(int node, const Vector& b) const {
  return factors_[node]->solve(b);
}

EigenPairs smallest_eigenpairs(const SpMat& stiffness, const SpMat& mass,
                               double kappa, int m, int max_iter, double tol) {
  const Eigen::Index n = mass.rows();
  const int p = std::min<Eigen::Index>(n, m + std::max(4, m / 2));
  SpMat op = stiffness + kappa * kappa * mass;
  Eigen::SimplicialLLT<SpMat> inv(op);
  if (inv.info() != Eigen::Success)
    throw NotPositiveDefinite("pencil operator not SPD");

  // deterministic start block
  rng::Substream stream(0x5eed5eedULL, 7);
  Eigen::MatrixXd x(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) x(i, j) = stream.normal();

  Vector prev = Vector::Zero(m);
  for (int it = 0; it < max_iter; ++it) {
    Eigen::MatrixXd y = inv.solve((mass * x).eval());
    // Rayleigh-Ritz on span(y)
    Eigen::MatrixXd ag = y.transpose() * (op * y);
    Eigen::MatrixXd mg = y.transpose() * (mass * y);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(ag, mg);
    if (es.info() != Eigen::Success)
      throw NoConvergence("dense Rayleigh-Ritz failed");
    x = y * es.eigenvectors();
    const Vector vals = es.eigenvalues().head(m);
    if (it > 0 && ((vals - prev).cwiseAbs().array() <=
                   tol * vals.cwiseAbs().array().max(1.0))
                      .all()) {
      EigenPairs out;
      out.values = vals;
      out.vectors = x.leftCols(m);
      return out;
    }
    prev = vals;
  }
  throw NoConvergence("subspace iteration did not converge");
}

Vector project_function(const SurfaceMesh& mesh,
                        const std::function<double(const Vec3&)>& f,
                        int quad_order) {
  const int n = static_cast<int>(mesh.vertices.size());
  Vector b = Vector::Zero(n);
  const auto rule = gauss_rule(quad_order);
  std::array<double, 4> shape;
  for (int q = 0; q < static_cast<int>(mesh.quads.size()); ++q) {
    const auto c = mesh.quad_corners(q);
    const auto& ids = mesh.quads[q];
    for (const auto& gu : rule)
      for (const auto& gv : rule) {
        const auto p = chart_at(c, gu.x, gv.x);
        shape_values(gu.x, gv.x, shape);
        const double sigma = area_ratio(mesh.surface, c, gu.x, gv.x);
        const double fv = f(mesh.surface.closest_point(p.x));
        const double w = gu.w * gv.w * p.area_element * sigma * fv;
        for (int i = 0; i < 4; ++i) b[ids[i]] += w * shape[i];
      }
  }
  return b;
}

double l2_norm(const SpMat& mass, const Vector& u) {
  return std::sqrt(u.dot(mass * u));
}

double l2_error_vs_function(const SurfaceMesh& mesh, const Vector& u,
                            const std::function<double(const Vec3&)>& f,
                            int quad_order) {
  double err2 = 0.0;
  const auto rule = gauss_rule(quad_order);
  std::array<double, 4> shape;
  for (int q = 0; q < static_cast<int>(mesh.quads.size()); ++q) {
    const auto c = mesh.quad_corners(q);
    const auto& ids = mesh.quads[q];
    for (const auto& gu : rule)
      for (const auto& gv : rule) {
        const auto p = chart_at(c, gu.x, gv.x);
        shape_values(gu.x, gv.x, shape);
        double uh = 0.0;
        for (int i = 0; i < 4; ++i) uh += shape[i] * u[ids[i]];
        const double diff = uh - f(mesh.surface.closest_point(p.x));
        err2 += gu.w * gv.w * p.area_element * diff * diff;
      }
  }
  return std::sqrt(err2);
}

SurfaceQuadrature build_surface_quadrature(const SurfaceMesh& mesh,
                                           int quad_order) {
  const auto rule = gauss_rule(quad_order);
  const int per_quad = quad_order * quad_order;
  const int n_qp = per_quad * static_cast<int>(mesh.quads.size());
  const int n = static_cast<int>(mesh.vertices.size());

  SurfaceQuadrature sq;
  sq.weights.resize(n_qp);
  sq.sigma.resize(n_qp);
  sq.lifted.resize(n_qp);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(4 * n_qp);

  std::array<double, 4> shape;
  int row = 0;
  for (int q = 0; q < static_cast<int>(mesh.quads.size()); ++q) {
    const auto c = mesh.quad_corners(q);
    const auto& ids = mesh.quads[q];
    for (const auto& gu : rule)
      for (const auto& gv : rule) {
        const auto p = chart_at(c, gu.x, gv.x);
        shape_values(gu.x, gv.x, shape);
        sq.weights[row] = gu.w * gv.w * p.area_element;
        sq.sigma[row] = area_ratio(mesh.surface, c, gu.x, gv.x);
        sq.lifted[row] = mesh.surface.closest_point(p.x);
        for (int i = 0; i < 4; ++i)
          triplets.emplace_back(row, ids[i], shape[i]);
        ++row;
      }
  }
  sq.basis.resize(n_qp, n);
  sq.basis.setFromTriplets(triplets.begin(), triplets.end());
  sq.basis.makeCompressed();
  return sq;
}

}  // namespace surfgrf

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "surfgrf/mesh.hpp"

namespace surfgrf {

using SpMat = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

struct NotPositiveDefinite : std::runtime_error {
  explicit NotPositiveDefinite(const std::string& what)
      : std::runtime_error(what) {}
};

struct NoConvergence : std::runtime_error {
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// Element matrices for the Q1 bilinear chart through four corners,
/// exposed for direct checks against closed forms.
Eigen::Matrix4d element_mass(const std::array<Vec3, 4>& corners,
                             int quad_order = 2);
Eigen::Matrix4d element_stiffness(const std::array<Vec3, 4>& corners,
                                  int quad_order = 2);

/// Mass matrix M_Gamma with entries integral_Gamma Phi_i Phi_j (2x2 Gauss).
SpMat assemble_mass(const SurfaceMesh& mesh);

/// sigma-weighted mass matrix M with entries integral_Gamma sigma Phi_i Phi_j.
/// Elevated quadrature since sigma is not polynomial on the element.
SpMat assemble_weighted_mass(const SurfaceMesh& mesh, int quad_order = 4);

/// Stiffness matrix A with entries integral_Gamma grad_Gamma Phi_i . grad_Gamma Phi_j.
SpMat assemble_stiffness(const SurfaceMesh& mesh);

/// Sparse Cholesky factor G (with fill-reducing permutation) of an SPD
/// matrix, G G^T = M.  Triangular solves are re-entrant.
class CholeskyFactor {
public:
  explicit CholeskyFactor(const SpMat& m);
  Eigen::Index dimension() const { return llt_.rows(); }
  Vector solve(const Vector& b) const;        // M^{-1} b
  Vector apply_factor(const Vector& z) const; // G z
private:
  Eigen::SimplicialLLT<SpMat> llt_;
};

/// Solves ((mu + kappa^2) M + A) u = b by CG with Jacobi preconditioning to
/// relative residual tol.  max_iter < 0 means 10*N.
Vector solve_shifted(const SpMat& mass, const SpMat& stiffness, double kappa,
                     double mu, const Vector& b, double tol = 1e-10,
                     int max_iter = -1);

/// Prefactorized solves for the family ((mu_l + kappa^2) M + A), reused
/// across Monte Carlo samples.
class ShiftedSolverSet {
public:
  ShiftedSolverSet(const SpMat& mass, const SpMat& stiffness, double kappa,
                   std::span<const double> mus);
  int size() const { return static_cast<int>(factors_.size()); }
  Vector solve(int node, const Vector& b) const;
private:
  std::vector<std::unique_ptr<Eigen::SimplicialLLT<SpMat>>> factors_;
};

struct EigenPairs {
  Vector values;              // ascending
  Eigen::MatrixXd vectors;    // M-orthonormal columns
};

/// m smallest eigenvalues of the pencil (kappa^2 M + A) x = Lambda M x by
/// shift-invert subspace iteration with Rayleigh-Ritz.
EigenPairs smallest_eigenpairs(const SpMat& stiffness, const SpMat& mass,
                               double kappa, int m, int max_iter = 400,
                               double tol = 1e-11);

/// Data vector b_i = integral_Gamma sigma (f o P) Phi_i with elevated
/// tensor-Gauss quadrature.
Vector project_function(const SurfaceMesh& mesh,
                        const std::function<double(const Vec3&)>& f,
                        int quad_order = 4);

/// sqrt(u^T M u)
double l2_norm(const SpMat& mass, const Vector& u);

/// || sum_i u_i Phi_i - f o P ||_{L^2(Gamma)}
double l2_error_vs_function(const SurfaceMesh& mesh, const Vector& u,
                            const std::function<double(const Vec3&)>& f,
                            int quad_order = 4);

/// Per-point quadrature data on Gamma at elevated order, shared by the
/// experiment drivers: weights include the Gauss weight and the area
/// element; `basis` is the n_qp x N evaluation matrix of the Q1 hat
/// functions; `lifted` holds P(x_qp) on gamma.
struct SurfaceQuadrature {
  Vector weights;
  Vector sigma;
  std::vector<Vec3> lifted;
  SpMat basis;
};

SurfaceQuadrature build_surface_quadrature(const SurfaceMesh& mesh,
                                           int quad_order = 4);

}  // namespace surfgrf

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surfgrf/fem.hpp"
#include "surfgrf/io.hpp"
#include "surfgrf/mesh.hpp"
#include "surfgrf/sampler.hpp"

namespace surfgrf {

struct ExperimentConfig {
  std::string surface = "sphere";  // "sphere" | "torus"
  double sphere_radius = 1.0;
  double torus_major = 2.0;
  double torus_minor = 0.5;
  std::vector<int> levels = {0, 1, 2, 3, 4, 5};
  double s = 0.75;
  double kappa = 0.5;
  double k = 0.6;
  int mc_samples = 10000;
  int truncation = 100;  // KL degree L for the coupled strong-error runs
  std::uint64_t seed = 2024;
  int threads = 0;  // <= 0: SURFGRF_THREADS env or all cores

  void check() const;  // throws std::invalid_argument on bad settings
};

AnalyticSurface make_surface(const ExperimentConfig& config);
int resolve_threads(int requested);

struct StrongErrorRow {
  int n_vertices;
  double h, e_sigma, e_strong, stderr_;
};

struct WeakErrorRow {
  int n_vertices;
  double h, e_sigma, mean_norm_sq, norm_stderr, e_weak;
};

/// Coupled strong error on the sphere: the same KL draws drive the spectral
/// reference u_L and the FEM data vector (sigma P w_L, Phi_i).
std::vector<StrongErrorRow> run_strong_error(const ExperimentConfig& config);

/// Weak error: alpha = G z samples, mean of ||U||^2_{L^2(Gamma)} against the
/// exact norm series.
std::vector<WeakErrorRow> run_weak_error(const ExperimentConfig& config);

struct CovarianceResult {
  std::vector<Vec3> points;
  Eigen::VectorXd mean;        // from the "mean" sample set
  Eigen::MatrixXd cov;         // from the independent "cov" sample set
  Eigen::MatrixXd cov_stderr;  // MC standard error per entry
};

/// Pairwise covariance at surface points on the finest configured level,
/// with independent seed sets for the mean and the covariance estimates.
CovarianceResult run_covariance(const ExperimentConfig& config,
                                const std::vector<Vec3>& points);

struct ConvergenceSummary {
  std::vector<StrongErrorRow> strong;
  std::vector<WeakErrorRow> weak;
  double strong_slope = 0.0;
  double weak_slope = 0.0;
  std::vector<double> strong_ratios;  // e(level) / e(level+1)
  std::vector<double> weak_ratios;
};

ConvergenceSummary run_convergence_summary(const ExperimentConfig& config);

/// Least-squares slope of log(e) against log(h).
double loglog_slope(const std::vector<double>& h, const std::vector<double>& e);

CsvTable strong_error_table(const std::vector<StrongErrorRow>& rows);
CsvTable weak_error_table(const std::vector<WeakErrorRow>& rows);
CsvTable covariance_table(const CovarianceResult& result);
CsvTable mesh_info_table(const SurfaceMesh& mesh);

}  // namespace surfgrf

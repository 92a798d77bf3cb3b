#include "surfgrf/experiment.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "surfgrf/rng.hpp"
#include "surfgrf/spherical.hpp"

namespace surfgrf {

namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Accumulated {
  double mean = 0.0;
  double stderr_ = 0.0;
};

Accumulated mean_and_stderr(const Vector& values) {
  const double m = values.mean();
  const double var =
      (values.array() - m).square().sum() / (values.size() - 1.0);
  return {m, std::sqrt(var / values.size())};
}

void warn_if_noisy(const char* what, double estimate, double se) {
  if (estimate != 0.0 && se > 0.2 * std::abs(estimate))
    std::cerr << "warning: MC standard error exceeds 20% of " << what << " ("
              << se << " vs " << estimate << ")\n";
}

struct LevelOperators {
  SurfaceMesh mesh;
  SpMat mass;
  SpMat stiffness;
  SincScheme scheme;
  ShiftedSolverSet solvers;
};

LevelOperators build_level(const ExperimentConfig& config, int level, int dim) {
  SurfaceMesh mesh = refined_mesh(make_surface(config), level);
  SpMat mass = assemble_mass(mesh);
  SpMat stiffness = assemble_stiffness(mesh);
  SincScheme scheme = build_scheme(config.s, config.kappa, dim, config.k);
  std::vector<double> mus(scheme.size());
  for (int l = 0; l < scheme.size(); ++l) mus[l] = std::exp(scheme.nodes[l]);
  ShiftedSolverSet solvers(mass, stiffness, config.kappa, mus);
  return {std::move(mesh), std::move(mass), std::move(stiffness),
          std::move(scheme), std::move(solvers)};
}

}  // namespace

void ExperimentConfig::check() const {
  const int dim = 3;
  const double lower = (dim - 1) / 4.0;
  if (!(lower < s && s < 1.0))
    throw std::invalid_argument("s must lie in ((n-1)/4, 1)");
  if (kappa <= 0.0) throw std::invalid_argument("kappa must be positive");
  if (k <= 0.0) throw std::invalid_argument("k must be positive");
  if (mc_samples < 2) throw std::invalid_argument("mc_samples must be >= 2");
  if (levels.empty()) throw std::invalid_argument("levels must be nonempty");
  if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
  if (surface != "sphere" && surface != "torus")
    throw std::invalid_argument("surface must be sphere or torus");
}

AnalyticSurface make_surface(const ExperimentConfig& config) {
  if (config.surface == "sphere")
    return AnalyticSurface::sphere(config.sphere_radius);
  if (config.surface == "torus")
    return AnalyticSurface::torus(config.torus_major, config.torus_minor);
  throw std::invalid_argument("unknown surface: " + config.surface);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SURFGRF_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<StrongErrorRow> run_strong_error(const ExperimentConfig& config) {
  config.check();
  if (config.surface != "sphere")
    throw std::invalid_argument(
        "strong error requires the sphere (spectral reference)");

  const int n_threads = resolve_threads(config.threads);
  const int degree = config.truncation;
  const int n_modes = (degree + 1) * (degree + 1);
  const std::uint64_t kl_seed = rng::seed_for_tag(config.seed, "kl");

  // per-degree solution weights (kappa^2 + l(l+1))^{-s}
  Vector mode_weights(n_modes);
  for (int l = 0; l <= degree; ++l) {
    const double w =
        std::pow(config.kappa * config.kappa + double(l) * (l + 1), -config.s);
    for (int i = l * l; i < (l + 1) * (l + 1); ++i) mode_weights[i] = w;
  }

  std::vector<StrongErrorRow> rows;
  for (const int level : config.levels) {
    const auto ops = build_level(config, level, 3);
    const int n = static_cast<int>(ops.mesh.vertices.size());
    const SurfaceQuadrature sq = build_surface_quadrature(ops.mesh, 3);
    const int n_qp = static_cast<int>(sq.weights.size());

    // data-vector operator: alpha = basis^T diag(w sigma) (w_L at qps)
    SpMat data_op = sq.basis.transpose();
    data_op = data_op * (sq.weights.cwiseProduct(sq.sigma)).asDiagonal();

    const int M = config.mc_samples;
    Vector err2(M);

    const int batch = std::min(M, 128);
    const int qp_block = 1024;
    for (int first = 0; first < M; first += batch) {
      const int b = std::min(batch, M - first);

      // KL draws for the batch, order fixed by sample_coefficients
      Eigen::MatrixXd xi(n_modes, b);
      for (int j = 0; j < b; ++j) {
        const auto coeffs = spherical::sample_coefficients(
            degree, kl_seed, static_cast<std::uint64_t>(first + j));
        xi.col(j) = Eigen::Map<const Vector>(coeffs.xi.data(), n_modes);
      }
      const Eigen::MatrixXd xi_sol = mode_weights.asDiagonal() * xi;

      Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(n, b);
      Eigen::MatrixXd u_ref(n_qp, b);  // u_L o P at quadrature points
      for (int row0 = 0; row0 < n_qp; row0 += qp_block) {
        const int r = std::min(qp_block, n_qp - row0);
        RowMajorMatrix basis_block(r, n_modes);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(n_threads)
#endif
        for (int i = 0; i < r; ++i)
          spherical::evaluate_basis(
              degree, sq.lifted[row0 + i],
              std::span<double>(basis_block.row(i).data(), n_modes));
        alpha.noalias() +=
            data_op.middleCols(row0, r) * (basis_block * xi).eval();
        u_ref.middleRows(row0, r).noalias() = basis_block * xi_sol;
      }

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(n_threads)
#endif
      for (int j = 0; j < b; ++j) {
        const Vector u =
            apply_fractional_inverse(ops.scheme, ops.solvers, alpha.col(j));
        const Vector diff = sq.basis * u - u_ref.col(j);
        err2[first + j] = diff.array().square().matrix().dot(sq.weights);
      }
    }

    const auto stats = mean_and_stderr(err2);
    StrongErrorRow row;
    row.n_vertices = n;
    row.h = mesh_size(ops.mesh);
    row.e_sigma = sigma_sup_error(ops.mesh);
    row.e_strong = std::sqrt(stats.mean);
    row.stderr_ =
        stats.mean > 0.0 ? stats.stderr_ / (2.0 * std::sqrt(stats.mean)) : 0.0;
    warn_if_noisy("e_strong", row.e_strong, row.stderr_);
    rows.push_back(row);
  }
  return rows;
}

std::vector<WeakErrorRow> run_weak_error(const ExperimentConfig& config) {
  config.check();
  if (config.surface != "sphere")
    throw std::invalid_argument(
        "weak error requires the sphere (exact norm series)");

  const int n_threads = resolve_threads(config.threads);
  const double exact =
      spherical::exact_norm_sq(config.kappa, config.s, 100000);
  const std::uint64_t alpha_seed = rng::seed_for_tag(config.seed, "alpha");

  std::vector<WeakErrorRow> rows;
  for (const int level : config.levels) {
    const auto ops = build_level(config, level, 3);
    const SpMat weighted = assemble_weighted_mass(ops.mesh);
    const CholeskyFactor factor(weighted);
    const NoiseSampler noise(factor, alpha_seed);

    const int M = config.mc_samples;
    Vector norms(M);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(n_threads)
#endif
    for (int i = 0; i < M; ++i) {
      const Vector u = apply_fractional_inverse(
          ops.scheme, ops.solvers,
          noise.sample_alpha(static_cast<std::uint64_t>(i)));
      norms[i] = u.dot(ops.mass * u);
    }

    const auto stats = mean_and_stderr(norms);
    WeakErrorRow row;
    row.n_vertices = static_cast<int>(ops.mesh.vertices.size());
    row.h = mesh_size(ops.mesh);
    row.e_sigma = sigma_sup_error(ops.mesh);
    row.mean_norm_sq = stats.mean;
    row.norm_stderr = stats.stderr_;
    row.e_weak = std::abs(exact - stats.mean);
    warn_if_noisy("mean norm", row.mean_norm_sq, row.norm_stderr);
    rows.push_back(row);
  }
  return rows;
}

CovarianceResult run_covariance(const ExperimentConfig& config,
                                const std::vector<Vec3>& points) {
  config.check();
  if (points.empty()) throw std::invalid_argument("no evaluation points");
  const int n_threads = resolve_threads(config.threads);
  const int level = config.levels.back();
  const auto ops = build_level(config, level, 3);
  const SpMat weighted = assemble_weighted_mass(ops.mesh);
  const CholeskyFactor factor(weighted);

  const int P = static_cast<int>(points.size());
  std::vector<PointLocation> locations;
  locations.reserve(P);
  for (const auto& p : points) locations.push_back(locate_point(ops.mesh, p));

  auto point_values = [&](const Vector& u) {
    Eigen::VectorXd v(P);
    for (int p = 0; p < P; ++p) {
      const auto& loc = locations[p];
      const auto& ids = ops.mesh.quads[loc.quad];
      v[p] = loc.weights[0] * u[ids[0]] + loc.weights[1] * u[ids[1]] +
             loc.weights[2] * u[ids[2]] + loc.weights[3] * u[ids[3]];
    }
    return v;
  };

  const int M = config.mc_samples;
  auto sample_point_matrix = [&](std::string_view tag) {
    const NoiseSampler noise(factor, rng::seed_for_tag(config.seed, tag));
    Eigen::MatrixXd values(M, P);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(n_threads)
#endif
    for (int i = 0; i < M; ++i) {
      const Vector u = apply_fractional_inverse(
          ops.scheme, ops.solvers,
          noise.sample_alpha(static_cast<std::uint64_t>(i)));
      values.row(i) = point_values(u).transpose();
    }
    return values;
  };

  // mean from one sample set, covariance from an independent second set
  const Eigen::MatrixXd mean_set = sample_point_matrix("mean");
  const Eigen::MatrixXd cov_set = sample_point_matrix("cov");

  CovarianceResult result;
  result.points = points;
  result.mean = mean_set.colwise().mean().transpose();
  result.cov.resize(P, P);
  result.cov_stderr.resize(P, P);
  const Eigen::MatrixXd centered =
      cov_set.rowwise() - result.mean.transpose();
  for (int a = 0; a < P; ++a)
    for (int c = 0; c < P; ++c) {
      const Eigen::VectorXd products =
          centered.col(a).cwiseProduct(centered.col(c));
      result.cov(a, c) = products.sum() / (M - 1.0);
      const double pm = products.mean();
      const double var =
          (products.array() - pm).square().sum() / (M - 1.0);
      result.cov_stderr(a, c) = std::sqrt(var / M);
    }
  return result;
}

double loglog_slope(const std::vector<double>& h,
                    const std::vector<double>& e) {
  if (h.size() != e.size() || h.size() < 2)
    throw std::invalid_argument("slope needs >= 2 matched points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(h.size());
  for (int i = 0; i < n; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(std::max(e[i], 1e-300));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceSummary run_convergence_summary(const ExperimentConfig& config) {
  config.check();
  if (config.levels.size() < 3)
    throw std::invalid_argument("convergence summary needs >= 3 levels");
  ConvergenceSummary summary;
  summary.strong = run_strong_error(config);
  summary.weak = run_weak_error(config);

  std::vector<double> h, es, ew;
  for (const auto& row : summary.strong) {
    h.push_back(row.h);
    es.push_back(row.e_strong);
  }
  for (const auto& row : summary.weak) ew.push_back(row.e_weak);
  summary.strong_slope = loglog_slope(h, es);
  summary.weak_slope = loglog_slope(h, ew);
  for (std::size_t i = 0; i + 1 < es.size(); ++i) {
    summary.strong_ratios.push_back(es[i] / es[i + 1]);
    summary.weak_ratios.push_back(ew[i] / ew[i + 1]);
  }
  return summary;
}

CsvTable strong_error_table(const std::vector<StrongErrorRow>& rows) {
  CsvTable t;
  t.header = {"N", "h", "e_sigma", "e_strong", "stderr"};
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.n_vertices), format_cell(r.h),
                      format_cell(r.e_sigma), format_cell(r.e_strong),
                      format_cell(r.stderr_)});
  return t;
}

CsvTable weak_error_table(const std::vector<WeakErrorRow>& rows) {
  CsvTable t;
  t.header = {"N", "h", "e_sigma", "mean_norm_sq", "stderr", "e_weak"};
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.n_vertices), format_cell(r.h),
                      format_cell(r.e_sigma), format_cell(r.mean_norm_sq),
                      format_cell(r.norm_stderr), format_cell(r.e_weak)});
  return t;
}

CsvTable covariance_table(const CovarianceResult& result) {
  CsvTable t;
  t.header = {"i", "j", "xi", "xj", "cov", "stderr"};
  const int P = static_cast<int>(result.points.size());
  auto point_str = [&](int p) {
    const auto& x = result.points[p];
    return "(" + format_cell(x.x()) + " " + format_cell(x.y()) + " " +
           format_cell(x.z()) + ")";
  };
  for (int a = 0; a < P; ++a)
    for (int c = a; c < P; ++c)
      t.rows.push_back({std::to_string(a), std::to_string(c), point_str(a),
                        point_str(c), format_cell(result.cov(a, c)),
                        format_cell(result.cov_stderr(a, c))});
  return t;
}

CsvTable mesh_info_table(const SurfaceMesh& mesh) {
  CsvTable t;
  t.header = {"N", "E", "F", "h", "e_sigma"};
  t.rows.push_back({std::to_string(mesh.vertices.size()),
                    std::to_string(edge_count(mesh)),
                    std::to_string(mesh.quads.size()),
                    format_cell(mesh_size(mesh)),
                    format_cell(sigma_sup_error(mesh))});
  return t;
}

}  // namespace surfgrf

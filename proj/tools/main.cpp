// Command-line driver for sampling Whittle-Matern fields on closed surfaces
// and reproducing the strong/weak error and covariance experiments.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "surfgrf/experiment.hpp"
#include "surfgrf/io.hpp"
#include "surfgrf/rng.hpp"
#include "surfgrf/sinc.hpp"
#include "surfgrf/spherical.hpp"

namespace {

using namespace surfgrf;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CliOptions {
  ExperimentConfig config;
  int level = 3;
  std::string out;
  std::uint64_t sample_index = 0;
  double lambda = 1.0;
  int n_eigs = 9;
  long norm_terms = 100000;
  std::string points_spec;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--surface", opt.config.surface, "sphere or torus")
      ->check(CLI::IsMember({"sphere", "torus"}));
  cmd->add_option("--s", opt.config.s, "fractional power in (1/2, 1)");
  cmd->add_option("--kappa", opt.config.kappa, "reaction coefficient > 0");
  cmd->add_option("--k", opt.config.k, "sinc quadrature spacing");
  cmd->add_option("--seed", opt.config.seed, "base RNG seed");
  cmd->add_option("--samples", opt.config.mc_samples, "Monte Carlo samples");
  cmd->add_option("--truncation", opt.config.truncation,
                  "KL truncation degree for coupled strong-error runs");
  cmd->add_option("--threads", opt.config.threads,
                  "worker threads (0: SURFGRF_THREADS env or all cores)")
      ->envname("SURFGRF_THREADS");
}

std::vector<Vec3> parse_points(const std::string& spec) {
  std::vector<Vec3> points;
  std::stringstream groups(spec);
  std::string group;
  while (std::getline(groups, group, ';')) {
    double x, y, z;
    if (std::sscanf(group.c_str(), "%lf,%lf,%lf", &x, &y, &z) != 3)
      throw CLI::ValidationError("--points", "expected x,y,z;x,y,z;...");
    points.emplace_back(x, y, z);
  }
  return points;
}

std::vector<Vec3> default_points(const std::string& surface) {
  if (surface == "sphere")
    return {{0, 0, -1}, {0, 1, 0}, {0, 0, 1}};
  return {{1.5, 0, 0}, {2, 0.5, 0}, {2.5, 0, 0}};
}

void emit(const CsvTable& table, const std::string& out) {
  if (out.empty())
    std::cout << to_csv(table);
  else
    export_csv(table, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian Whittle-Matern random fields on closed surfaces "
               "via sinc quadrature and surface finite elements"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file");

  CliOptions opt;

  auto* mesh_cmd = app.add_subcommand("mesh", "mesh utilities");
  auto* mesh_info = mesh_cmd->add_subcommand("info", "print N,E,F,h,e_sigma");
  add_common(mesh_info, opt);
  mesh_info->add_option("--level", opt.level, "refinement level");
  mesh_info->add_option("--out", opt.out, "CSV output path (default stdout)");
  mesh_info->add_option("--vtk", opt.points_spec, "optional VTK export path");

  auto* sample = app.add_subcommand("sample", "draw one field realization");
  add_common(sample, opt);
  sample->add_option("--level", opt.level, "refinement level");
  sample->add_option("--index", opt.sample_index, "sample index");
  sample->add_option("--out", opt.out, "VTK output path")->required();

  auto* strong = app.add_subcommand("strong-error",
                                    "coupled strong-error table (sphere)");
  add_common(strong, opt);
  strong->add_option("--levels", opt.config.levels, "refinement levels");
  strong->add_option("--out", opt.out, "CSV output path (default stdout)");

  auto* weak = app.add_subcommand("weak-error", "weak-error table (sphere)");
  add_common(weak, opt);
  weak->add_option("--levels", opt.config.levels, "refinement levels");
  weak->add_option("--out", opt.out, "CSV output path (default stdout)");

  auto* cov = app.add_subcommand("covariance",
                                 "pairwise covariance at surface points");
  add_common(cov, opt);
  cov->add_option("--level", opt.level, "refinement level");
  cov->add_option("--points", opt.points_spec,
                  "semicolon-separated x,y,z triples (default: three "
                  "reference points on the surface)");
  cov->add_option("--out", opt.out, "CSV output path (default stdout)");

  auto* conv = app.add_subcommand("convergence",
                                  "log-log convergence slopes (sphere)");
  add_common(conv, opt);
  conv->add_option("--levels", opt.config.levels, "refinement levels");
  conv->add_option("--out", opt.out, "CSV output path (default stdout)");

  auto* eigs = app.add_subcommand("eigs",
                                  "smallest generalized eigenvalues of the "
                                  "FEM pencil");
  add_common(eigs, opt);
  eigs->add_option("--level", opt.level, "refinement level");
  eigs->add_option("--count", opt.n_eigs, "number of eigenvalues")
      ->check(CLI::Range(1, 20));
  eigs->add_option("--out", opt.out, "CSV output path (default stdout)");

  auto* sinc_cmd = app.add_subcommand("scalar-sinc",
                                      "sinc approximation of lambda^{-s}");
  add_common(sinc_cmd, opt);
  sinc_cmd->add_option("--lambda", opt.lambda, "spectral value");

  auto* norm = app.add_subcommand("exact-norm",
                                  "exact norm series on the sphere");
  add_common(norm, opt);
  norm->add_option("--terms", opt.norm_terms, "truncation degree");

  CLI11_PARSE(app, argc, argv);

  try {
    opt.config.check();

    if (mesh_info->parsed()) {
      const SurfaceMesh mesh = refined_mesh(make_surface(opt.config), opt.level);
      emit(mesh_info_table(mesh), opt.out);
      if (!opt.points_spec.empty()) export_mesh_vtk(mesh, opt.points_spec);
    } else if (sample->parsed()) {
      const AnalyticSurface surface = make_surface(opt.config);
      const SurfaceMesh mesh = refined_mesh(surface, opt.level);
      const SpMat mass = assemble_mass(mesh);
      const SpMat stiffness = assemble_stiffness(mesh);
      const SincScheme scheme =
          build_scheme(opt.config.s, opt.config.kappa, 3, opt.config.k);
      std::vector<double> mus(scheme.size());
      for (int l = 0; l < scheme.size(); ++l)
        mus[l] = std::exp(scheme.nodes[l]);
      const ShiftedSolverSet solvers(mass, stiffness, opt.config.kappa, mus);
      const CholeskyFactor factor(assemble_weighted_mass(mesh));
      const NoiseSampler noise(
          factor, rng::seed_for_tag(opt.config.seed, "alpha"));
      const FieldSample field = draw_field_sample(
          scheme, solvers, noise, opt.config.seed, opt.sample_index, opt.level);
      export_field_vtk(mesh, field.coefficients, opt.out);
    } else if (strong->parsed()) {
      emit(strong_error_table(run_strong_error(opt.config)), opt.out);
    } else if (weak->parsed()) {
      emit(weak_error_table(run_weak_error(opt.config)), opt.out);
    } else if (cov->parsed()) {
      opt.config.levels = {opt.level};
      const auto points = opt.points_spec.empty()
                              ? default_points(opt.config.surface)
                              : parse_points(opt.points_spec);
      emit(covariance_table(run_covariance(opt.config, points)), opt.out);
    } else if (conv->parsed()) {
      const auto summary = run_convergence_summary(opt.config);
      CsvTable t;
      t.header = {"quantity", "value"};
      t.rows.push_back({"strong_slope", format_cell(summary.strong_slope)});
      t.rows.push_back({"weak_slope", format_cell(summary.weak_slope)});
      for (std::size_t i = 0; i < summary.strong_ratios.size(); ++i)
        t.rows.push_back({"strong_ratio_" + std::to_string(i),
                          format_cell(summary.strong_ratios[i])});
      for (std::size_t i = 0; i < summary.weak_ratios.size(); ++i)
        t.rows.push_back({"weak_ratio_" + std::to_string(i),
                          format_cell(summary.weak_ratios[i])});
      emit(t, opt.out);
    } else if (eigs->parsed()) {
      const SurfaceMesh mesh = refined_mesh(make_surface(opt.config), opt.level);
      const auto pairs =
          smallest_eigenpairs(assemble_stiffness(mesh), assemble_mass(mesh),
                              opt.config.kappa, opt.n_eigs);
      CsvTable t;
      t.header = {"j", "Lambda"};
      for (int j = 0; j < pairs.values.size(); ++j)
        t.rows.push_back({std::to_string(j + 1), format_cell(pairs.values[j])});
      emit(t, opt.out);
    } else if (sinc_cmd->parsed()) {
      const SincScheme scheme =
          build_scheme(opt.config.s, opt.config.kappa, 3, opt.config.k);
      std::printf("%.12e\n", scalar_sinc(scheme, opt.lambda));
    } else if (norm->parsed()) {
      std::printf("%.5f\n", spherical::exact_norm_sq(opt.config.kappa,
                                                     opt.config.s,
                                                     opt.norm_terms));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidFraction& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}

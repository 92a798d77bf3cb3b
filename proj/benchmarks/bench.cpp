#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "surfgrf/fem.hpp"
#include "surfgrf/mesh.hpp"
#include "surfgrf/rng.hpp"
#include "surfgrf/sampler.hpp"
#include "surfgrf/sinc.hpp"
#include "surfgrf/spherical.hpp"

using namespace surfgrf;

namespace {

SurfaceMesh sphere_mesh(int level) {
  static std::vector<SurfaceMesh> cache;
  if (cache.empty()) {
    cache.push_back(base_mesh(AnalyticSurface::sphere(1.0)));
    for (int l = 1; l <= 5; ++l) cache.push_back(refine(cache.back()));
  }
  return cache[level];
}

}  // namespace

static void BM_Refine(benchmark::State& state) {
  const auto mesh = sphere_mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(refine(mesh));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(mesh.quads.size()));
}
BENCHMARK(BM_Refine)->Arg(2)->Arg(4);

static void BM_AssembleStiffness(benchmark::State& state) {
  const auto mesh = sphere_mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_stiffness(mesh));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(mesh.quads.size()));
}
BENCHMARK(BM_AssembleStiffness)->Arg(3)->Arg(5);

static void BM_AssembleWeightedMass(benchmark::State& state) {
  const auto mesh = sphere_mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_weighted_mass(mesh));
}
BENCHMARK(BM_AssembleWeightedMass)->Arg(3)->Arg(5);

static void BM_CholeskyFactorize(benchmark::State& state) {
  const auto mesh = sphere_mesh(static_cast<int>(state.range(0)));
  const SpMat m = assemble_mass(mesh);
  const SpMat a = assemble_stiffness(mesh);
  SpMat shifted = 1.25 * m + a;
  for (auto _ : state) {
    Eigen::SimplicialLLT<SpMat> llt(shifted);
    benchmark::DoNotOptimize(llt.info());
  }
}
BENCHMARK(BM_CholeskyFactorize)->Arg(3)->Arg(5);

static void BM_FractionalSolve(benchmark::State& state) {
  const auto mesh = sphere_mesh(static_cast<int>(state.range(0)));
  const SpMat m = assemble_mass(mesh);
  const SpMat a = assemble_stiffness(mesh);
  const SincScheme scheme = build_scheme(0.75, 0.5, 3, 0.6);
  std::vector<double> mus(scheme.size());
  for (int l = 0; l < scheme.size(); ++l) mus[l] = std::exp(scheme.nodes[l]);
  const ShiftedSolverSet solvers(m, a, 0.5, mus);
  const CholeskyFactor factor(assemble_weighted_mass(mesh));
  const NoiseSampler noise(factor, 7);
  std::uint64_t index = 0;
  for (auto _ : state) {
    const Vector u = apply_fractional_inverse(scheme, solvers,
                                              noise.sample_alpha(index++));
    benchmark::DoNotOptimize(u.norm());
  }
  state.SetItemsProcessed(state.iterations() * scheme.size());
}
BENCHMARK(BM_FractionalSolve)->Arg(2)->Arg(3)->Arg(4);

static void BM_ScalarSinc(benchmark::State& state) {
  const SincScheme scheme = build_scheme(0.75, 0.5, 3, 0.6);
  double lambda = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scalar_sinc(scheme, lambda));
    lambda = lambda < 1e6 ? lambda * 1.7 : 0.3;
  }
}
BENCHMARK(BM_ScalarSinc);

static void BM_SphericalBasis(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  std::vector<double> out((degree + 1) * (degree + 1));
  const Vec3 x = Vec3(0.3, -0.4, 0.87).normalized();
  for (auto _ : state) {
    spherical::evaluate_basis(degree, x, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * out.size());
}
BENCHMARK(BM_SphericalBasis)->Arg(20)->Arg(100);

static void BM_NormalDraws(benchmark::State& state) {
  rng::Substream stream(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(stream.normal());
}
BENCHMARK(BM_NormalDraws);

BENCHMARK_MAIN();

#include "surfgrf/sampler.hpp"

#include "surfgrf/rng.hpp"

namespace surfgrf {

Vector NoiseSampler::sample_alpha(std::uint64_t sample_index) const {
  rng::Substream stream(seed_, sample_index);
  Vector z(factor_->dimension());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = stream.normal();
  return factor_->apply_factor(z);
}

Vector apply_fractional_inverse(const SincScheme& scheme,
                                const ShiftedSolverSet& solvers,
                                const Vector& alpha) {
  Vector u = Vector::Zero(alpha.size());
  for (int l = 0; l < scheme.size(); ++l)
    u += scheme.weights[l] * solvers.solve(l, alpha);
  return u;
}

FieldSample draw_field_sample(const SincScheme& scheme,
                              const ShiftedSolverSet& solvers,
                              const NoiseSampler& noise, std::uint64_t seed,
                              std::uint64_t sample_index, int level) {
  FieldSample sample;
  sample.coefficients =
      apply_fractional_inverse(scheme, solvers, noise.sample_alpha(sample_index));
  sample.seed = seed;
  sample.sample_index = sample_index;
  sample.s = scheme.s;
  sample.kappa = scheme.kappa;
  sample.k = scheme.k;
  sample.level = level;
  return sample;
}

}  // namespace surfgrf

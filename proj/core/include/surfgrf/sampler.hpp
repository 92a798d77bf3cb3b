#pragma once

#include <cstdint>

#include "surfgrf/fem.hpp"
#include "surfgrf/sinc.hpp"

namespace surfgrf {

/// White-noise data vectors alpha = G z ~ N(0, M), with z drawn from the
/// per-sample counter-based substream.  Deterministic given (seed, index).
class NoiseSampler {
public:
  NoiseSampler(const CholeskyFactor& factor, std::uint64_t seed)
      : factor_(&factor), seed_(seed) {}

  Vector sample_alpha(std::uint64_t sample_index) const;

private:
  const CholeskyFactor* factor_;
  std::uint64_t seed_;
};

/// One realization of the field with its provenance.
struct FieldSample {
  Vector coefficients;
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;
  double s = 0.0, kappa = 0.0, k = 0.0;
  int level = 0;
};

/// U = sum_l w_l u_l with ((e^{y_l} + kappa^2) M + A) u_l = alpha, using the
/// prefactorized node solvers.
Vector apply_fractional_inverse(const SincScheme& scheme,
                                const ShiftedSolverSet& solvers,
                                const Vector& alpha);

/// Convenience: draw one reproducible realization on a mesh.
FieldSample draw_field_sample(const SincScheme& scheme,
                              const ShiftedSolverSet& solvers,
                              const NoiseSampler& noise, std::uint64_t seed,
                              std::uint64_t sample_index, int level);

}  // namespace surfgrf

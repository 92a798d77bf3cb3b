#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace surfgrf {

struct InvalidFraction : std::runtime_error {
  explicit InvalidFraction(const std::string& what)
      : std::runtime_error(what) {}
};

/// Sinc quadrature for lambda^{-s} on the Balakrishnan integral after the
/// log substitution: nodes y_l = k*l for l = -n_neg..n_pos and weights
/// w_l = (k sin(pi s)/pi) e^{(1-s) y_l}, with
///   n_pos = ceil(2 pi^2 / ((s - (n-1)/4) k^2)),
///   n_neg = ceil(pi^2 / ((1 - s) k^2)).
struct SincScheme {
  double s;
  double kappa;
  int dim;   // ambient dimension n in {2,3}
  double k;  // quadrature spacing
  int n_pos; // upper node count
  int n_neg; // lower node count
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

SincScheme build_scheme(double s, double kappa, int dim, double k);

/// sum_l w_l / (e^{y_l} + lambda), an exponentially accurate approximation
/// of lambda^{-s}.
double scalar_sinc(const SincScheme& scheme, double lambda);

/// sum_j scalar_sinc(Lambda_j)^2: the exact mean-square L^2 norm of the
/// sampler diagonalized over the discrete eigenvalues.
double eigen_weak_norm(std::span<const double> eigenvalues,
                       const SincScheme& scheme);

}  // namespace surfgrf

#include "surfgrf/sinc.hpp"

#include <cmath>

namespace surfgrf {

SincScheme build_scheme(double s, double kappa, int dim, double k) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("build_scheme: dim must be 2 or 3");
  const double lower = (dim - 1) / 4.0;
  if (!(lower < s && s < 1.0))
    throw InvalidFraction("fractional power s must lie in ((n-1)/4, 1), got " +
                          std::to_string(s));
  if (kappa <= 0.0) throw std::invalid_argument("kappa must be positive");
  if (k <= 0.0) throw std::invalid_argument("spacing k must be positive");

  SincScheme scheme{s, kappa, dim, k, 0, 0, {}, {}};
  const double pi2 = M_PI * M_PI;
  scheme.n_pos = static_cast<int>(std::ceil(2.0 * pi2 / ((s - lower) * k * k)));
  scheme.n_neg = static_cast<int>(std::ceil(pi2 / ((1.0 - s) * k * k)));

  const double factor = k * std::sin(M_PI * s) / M_PI;
  scheme.nodes.reserve(scheme.n_pos + scheme.n_neg + 1);
  scheme.weights.reserve(scheme.n_pos + scheme.n_neg + 1);
  for (int l = -scheme.n_neg; l <= scheme.n_pos; ++l) {
    const double y = k * l;
    scheme.nodes.push_back(y);
    scheme.weights.push_back(factor * std::exp((1.0 - s) * y));
  }
  return scheme;
}

double scalar_sinc(const SincScheme& scheme, double lambda) {
  // summed from the most negative node up; terms w_l/(e^{y_l}+lambda) grow
  // then decay smoothly, plain accumulation is adequate
  double sum = 0.0;
  for (int i = 0; i < scheme.size(); ++i)
    sum += scheme.weights[i] / (std::exp(scheme.nodes[i]) + lambda);
  return sum;
}

double eigen_weak_norm(std::span<const double> eigenvalues,
                       const SincScheme& scheme) {
  double sum = 0.0;
  for (const double lambda : eigenvalues) {
    const double q = scalar_sinc(scheme, lambda);
    sum += q * q;
  }
  return sum;
}

}  // namespace surfgrf

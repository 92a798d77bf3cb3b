#include "surfgrf/spherical.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "surfgrf/rng.hpp"

namespace surfgrf::spherical {

namespace {

// log((l-m)!/(l+m)!) with an exact integer path for small l
double log_factorial_ratio(int l, int m) {
  if (l <= 30) {
    double ratio = 1.0;
    for (int i = l - m + 1; i <= l + m; ++i) ratio *= i;
    return -std::log(ratio);
  }
  return std::lgamma(l - m + 1.0) - std::lgamma(l + m + 1.0);
}

}  // namespace

double legendre_p(int l, int m, double mu) {
  assert(0 <= m && m <= l);
  assert(std::abs(mu) <= 1.0 + 1e-14);
  // P_{m,m} = (-1)^m (2m-1)!! (1-mu^2)^{m/2}, then upward in l
  double pmm = 1.0;
  if (m > 0) {
    const double somx2 = std::sqrt((1.0 - mu) * (1.0 + mu));
    double fact = 1.0;
    for (int i = 0; i < m; ++i) {
      pmm *= -fact * somx2;
      fact += 2.0;
    }
  }
  if (l == m) return pmm;
  double pmmp1 = mu * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pmmp1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (mu * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

double q_lm(int l, int m, double theta) {
  const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI) *
                                std::exp(log_factorial_ratio(l, m)));
  return norm * legendre_p(l, m, std::cos(theta));
}

double exact_norm_sq(double kappa, double s, long max_degree) {
  const double k2 = kappa * kappa;
  double sum = 0.0, comp = 0.0;  // Kahan
  for (long l = 0; l <= max_degree; ++l) {
    const double lam = k2 + static_cast<double>(l) * (l + 1.0);
    const double term = std::pow(lam, -2.0 * s) * (2.0 * l + 1.0);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

HarmonicCoefficients sample_coefficients(int degree, std::uint64_t seed,
                                         std::uint64_t sample_index) {
  if (degree < 0) throw std::invalid_argument("truncation degree < 0");
  HarmonicCoefficients c;
  c.degree = degree;
  c.xi.resize(static_cast<std::size_t>(degree + 1) * (degree + 1));
  rng::Substream stream(seed, sample_index);
  std::size_t idx = 0;
  for (int l = 0; l <= degree; ++l) {
    c.xi[idx++] = stream.normal();           // xi1_{l,0}
    for (int m = 1; m <= l; ++m) {
      c.xi[idx++] = stream.normal();         // xi1_{l,m}
      c.xi[idx++] = stream.normal();         // xi2_{l,m}
    }
  }
  return c;
}

void evaluate_basis(int degree, const Vec3& x, std::span<double> out) {
  const std::size_t n_modes =
      static_cast<std::size_t>(degree + 1) * (degree + 1);
  if (out.size() != n_modes)
    throw std::invalid_argument("evaluate_basis: bad output span size");
  const double r = x.norm();
  if (std::abs(r - 1.0) > 1e-8)
    throw std::invalid_argument("evaluate_basis: point not on unit sphere");

  const double ct = std::clamp(x.z() / r, -1.0, 1.0);
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  double phi = std::atan2(x.y(), x.x());
  if (phi < 0.0) phi += 2.0 * M_PI;

  // normalized recurrence: N_{l,m} = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_{l,m}
  // columns m, rising l; two rolling rows per m
  const double sqrt2 = std::sqrt(2.0);
  std::vector<double> cos_m(degree + 1), sin_m(degree + 1);
  for (int m = 0; m <= degree; ++m) {
    cos_m[m] = std::cos(m * phi);
    sin_m[m] = std::sin(m * phi);
  }

  double nmm = 1.0 / std::sqrt(4.0 * M_PI);  // N_{0,0}
  for (int m = 0; m <= degree; ++m) {
    // emit column m for l = m..degree
    double prev = 0.0;       // N_{l-2,m}
    double curr = nmm;       // N_{l-1,m} seed = N_{m,m}
    for (int l = m; l <= degree; ++l) {
      double value;
      if (l == m) {
        value = nmm;
      } else if (l == m + 1) {
        value = std::sqrt(2.0 * m + 3.0) * ct * nmm;
        prev = nmm;
        curr = value;
      } else {
        const double a = std::sqrt((4.0 * l * l - 1.0) /
                                   (static_cast<double>(l) * l - m * m));
        const double lm = l - 1.0;
        const double ap = std::sqrt((4.0 * lm * lm - 1.0) / (lm * lm - m * m));
        value = a * (ct * curr - prev / ap);
        prev = curr;
        curr = value;
      }
      if (m == 0) {
        out[HarmonicCoefficients::packed_index(l, 0, false)] = value;
      } else {
        out[HarmonicCoefficients::packed_index(l, m, false)] =
            sqrt2 * value * cos_m[m];
        out[HarmonicCoefficients::packed_index(l, m, true)] =
            sqrt2 * value * sin_m[m];
      }
    }
    // N_{m+1,m+1} = -sqrt((2m+3)/(2m+2)) sin(theta) N_{m,m}
    nmm *= -std::sqrt((2.0 * m + 3.0) / (2.0 * m + 2.0)) * st;
  }
}

double evaluate_noise(const HarmonicCoefficients& coeffs, const Vec3& x) {
  std::vector<double> basis(coeffs.xi.size());
  evaluate_basis(coeffs.degree, x, basis);
  double sum = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) sum += basis[i] * coeffs.xi[i];
  return sum;
}

double evaluate_solution(const HarmonicCoefficients& coeffs, double kappa,
                         double s, const Vec3& x) {
  std::vector<double> basis(coeffs.xi.size());
  evaluate_basis(coeffs.degree, x, basis);
  double sum = 0.0;
  const double k2 = kappa * kappa;
  for (int l = 0; l <= coeffs.degree; ++l) {
    const double weight = std::pow(k2 + static_cast<double>(l) * (l + 1.0), -s);
    const int lo = l * l, hi = (l + 1) * (l + 1);
    double block = 0.0;
    for (int i = lo; i < hi; ++i) block += basis[i] * coeffs.xi[i];
    sum += weight * block;
  }
  return sum;
}

}  // namespace surfgrf::spherical

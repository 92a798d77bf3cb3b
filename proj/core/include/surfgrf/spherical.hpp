#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "surfgrf/surface.hpp"

namespace surfgrf::spherical {

/// Associated Legendre function with Condon-Shortley phase,
/// P_{l,m}(mu) = (-1)^m (1-mu^2)^{m/2} d^m/dmu^m P_l(mu), 0 <= m <= l.
double legendre_p(int l, int m, double mu);

/// Normalized amplitude q_{l,m}(theta) =
/// sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_{l,m}(cos theta).
double q_lm(int l, int m, double theta);

/// Partial sum of sum_l (kappa^2 + l(l+1))^{-2s} (2l+1) up to degree
/// max_degree, in compensated arithmetic.
double exact_norm_sq(double kappa, double s, long max_degree);

/// Standard normal draws for the truncated expansion, ordered l ascending,
/// m ascending, xi1 before xi2 (the ordering is part of the reproducibility
/// contract for the coupled strong-error experiment).
struct HarmonicCoefficients {
  int degree = 0;           // truncation L
  std::vector<double> xi;   // packed, (L+1)^2 scalars

  static int packed_index(int l, int m, bool second) {
    // per degree l: [xi1_{l,0}, xi1_{l,1}, xi2_{l,1}, ..., xi1_{l,l}, xi2_{l,l}]
    return l * l + (m == 0 ? 0 : 2 * m - 1 + (second ? 1 : 0));
  }
  double xi1(int l, int m) const { return xi[packed_index(l, m, false)]; }
  double xi2(int l, int m) const { return xi[packed_index(l, m, true)]; }
};

HarmonicCoefficients sample_coefficients(int degree, std::uint64_t seed,
                                         std::uint64_t sample_index);

/// Evaluates the (L+1)^2 real basis functions at a unit vector x, in packed
/// order: per degree l, q_{l,0}; then for m >= 1, sqrt(2) q_{l,m} cos(m phi)
/// and sqrt(2) q_{l,m} sin(m phi).  Stable normalized recurrence, O(L^2).
void evaluate_basis(int degree, const Vec3& x, std::span<double> out);

/// Truncated KL white noise w_L(x).
double evaluate_noise(const HarmonicCoefficients& coeffs, const Vec3& x);

/// Truncated KL solution u_L(x): degree-l block weighted by
/// (kappa^2 + l(l+1))^{-s}.
double evaluate_solution(const HarmonicCoefficients& coeffs, double kappa,
                         double s, const Vec3& x);

}  // namespace surfgrf::spherical

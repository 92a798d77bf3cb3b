#include <doctest.h>

#include <cmath>
#include <vector>

#include "surfgrf/quadrature.hpp"
#include "surfgrf/spherical.hpp"

using namespace surfgrf;
namespace sph = surfgrf::spherical;

TEST_CASE("associated legendre closed forms") {
  const double mus[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  for (const double mu : mus) {
    CAPTURE(mu);
    const double s = std::sqrt(1 - mu * mu);
    CHECK(sph::legendre_p(0, 0, mu) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sph::legendre_p(1, 0, mu) == doctest::Approx(mu).epsilon(1e-14));
    CHECK(sph::legendre_p(1, 1, mu) == doctest::Approx(-s).epsilon(1e-14));
    CHECK(sph::legendre_p(2, 0, mu) ==
          doctest::Approx(0.5 * (3 * mu * mu - 1)).epsilon(1e-14));
    CHECK(sph::legendre_p(2, 1, mu) ==
          doctest::Approx(-3 * mu * s).epsilon(1e-14));
    CHECK(sph::legendre_p(2, 2, mu) ==
          doctest::Approx(3 * (1 - mu * mu)).epsilon(1e-14));
    CHECK(sph::legendre_p(3, 0, mu) ==
          doctest::Approx(0.5 * mu * (5 * mu * mu - 3)).epsilon(1e-13));
    CHECK(sph::legendre_p(4, 0, mu) ==
          doctest::Approx((35 * std::pow(mu, 4) - 30 * mu * mu + 3) / 8)
              .epsilon(1e-13));
    CHECK(sph::legendre_p(3, 3, mu) ==
          doctest::Approx(-15 * s * s * s).epsilon(1e-13));
  }
}

TEST_CASE("normalized amplitudes") {
  CHECK(sph::q_lm(0, 0, 1.234) ==
        doctest::Approx(1.0 / std::sqrt(4 * M_PI)).epsilon(1e-14));
  CHECK(sph::q_lm(1, 0, 0.0) ==
        doctest::Approx(std::sqrt(3.0 / (4 * M_PI))).epsilon(1e-14));
  const double theta = 0.8;
  CHECK(sph::q_lm(1, 0, theta) ==
        doctest::Approx(std::sqrt(3.0 / (4 * M_PI)) * std::cos(theta))
            .epsilon(1e-14));
  // high degree stays finite under the log-factorial path
  CHECK(std::isfinite(sph::q_lm(80, 60, 1.0)));
}

TEST_CASE("basis evaluation matches the direct amplitudes") {
  const int degree = 12;
  const int count = (degree + 1) * (degree + 1);
  std::vector<double> basis(count);
  const Vec3 xs[] = {{0.2, -0.4, 0.8944272}, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}};
  for (Vec3 x : xs) {
    x.normalize();
    sph::evaluate_basis(degree, x, basis);
    const double theta = std::acos(x.z());
    const double phi = std::atan2(x.y(), x.x());
    for (int l = 0; l <= degree; ++l) {
      CHECK(basis[sph::HarmonicCoefficients::packed_index(l, 0, false)] ==
            doctest::Approx(sph::q_lm(l, 0, theta)).epsilon(1e-11));
      for (int m = 1; m <= l; ++m) {
        const double q = std::sqrt(2.0) * sph::q_lm(l, m, theta);
        CHECK(basis[sph::HarmonicCoefficients::packed_index(l, m, false)] ==
              doctest::Approx(q * std::cos(m * phi)).epsilon(1e-11));
        CHECK(basis[sph::HarmonicCoefficients::packed_index(l, m, true)] ==
              doctest::Approx(q * std::sin(m * phi)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("basis is orthonormal under quadrature") {
  // Gauss in mu (exact for the polynomial part) x uniform in phi (exact for
  // trigonometric degree < n_phi)
  const int degree = 6;
  const int count = (degree + 1) * (degree + 1);
  const int n_phi = 32;
  std::vector<double> gram(count * count, 0.0);
  std::vector<double> basis(count);
  // composite 6-point Gauss on 8 panels of [-1,1]
  for (int panel = 0; panel < 8; ++panel) {
    const double a = -1.0 + 0.25 * panel;
    for (const auto& gp : gauss_rule(6)) {
      const double mu = a + 0.125 * (gp.x + 1.0);
      const double wmu = 0.125 * gp.w;
      const double st = std::sqrt(1 - mu * mu);
      for (int j = 0; j < n_phi; ++j) {
        const double phi = 2 * M_PI * j / n_phi;
        const Vec3 x(st * std::cos(phi), st * std::sin(phi), mu);
        sph::evaluate_basis(degree, x, basis);
        const double w = wmu * 2 * M_PI / n_phi;
        for (int r = 0; r < count; ++r)
          for (int c = r; c < count; ++c)
            gram[r * count + c] += w * basis[r] * basis[c];
      }
    }
  }
  for (int r = 0; r < count; ++r)
    for (int c = r; c < count; ++c) {
      CAPTURE(r);
      CAPTURE(c);
      CHECK(gram[r * count + c] ==
            doctest::Approx(r == c ? 1.0 : 0.0).epsilon(1e-9));
    }
}

TEST_CASE("addition theorem") {
  // sum_m of the packed basis products at x and y equals
  // (2l+1)/(4 pi) P_l(cos angle(x,y)) -- the rotational invariance of the
  // covariance of each degree block
  const int degree = 8;
  const int count = (degree + 1) * (degree + 1);
  Vec3 x(0.3, -0.5, 0.81), y(-0.6, 0.1, 0.79);
  x.normalize();
  y.normalize();
  std::vector<double> bx(count), by(count);
  sph::evaluate_basis(degree, x, bx);
  sph::evaluate_basis(degree, y, by);
  const double c = x.dot(y);
  for (int l = 0; l <= degree; ++l) {
    double sum = 0;
    for (int m = 0; m <= l; ++m) {
      sum += bx[sph::HarmonicCoefficients::packed_index(l, m, false)] *
             by[sph::HarmonicCoefficients::packed_index(l, m, false)];
      if (m > 0)
        sum += bx[sph::HarmonicCoefficients::packed_index(l, m, true)] *
               by[sph::HarmonicCoefficients::packed_index(l, m, true)];
    }
    CHECK(sum == doctest::Approx((2 * l + 1) / (4 * M_PI) *
                                 sph::legendre_p(l, 0, c)).epsilon(1e-11));
  }
}

TEST_CASE("exact norm series") {
  // convergent closed-form partial sums, compensated summation
  CHECK(sph::exact_norm_sq(0.5, 0.75, 100000) ==
        doctest::Approx(9.86958).epsilon(1e-6));
  CHECK(sph::exact_norm_sq(2.0, 0.9, 100000) ==
        doctest::Approx(0.44277).epsilon(1e-5));
  // monotone in the truncation, decreasing in kappa and s
  CHECK(sph::exact_norm_sq(0.5, 0.75, 100) <
        sph::exact_norm_sq(0.5, 0.75, 1000));
  CHECK(sph::exact_norm_sq(2.0, 0.75, 1000) >
        sph::exact_norm_sq(8.0, 0.75, 1000));
}

TEST_CASE("coefficient sampling is reproducible") {
  const auto a = sph::sample_coefficients(20, 99, 5);
  const auto b = sph::sample_coefficients(20, 99, 5);
  const auto c = sph::sample_coefficients(20, 99, 6);
  REQUIRE(a.xi.size() == 21 * 21);
  CHECK(a.xi == b.xi);
  CHECK(a.xi != c.xi);
  CHECK(a.xi1(3, 2) == a.xi[sph::HarmonicCoefficients::packed_index(3, 2, false)]);
}

TEST_CASE("noise variance at a point matches the truncated spectrum") {
  // Var w_L(x) = sum_l (2l+1)/(4 pi) = (L+1)^2/(4 pi) at every x
  const int degree = 10;
  const Vec3 x = Vec3(0.3, 0.2, 0.93).normalized();
  const int n = 20000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const auto coeffs = sph::sample_coefficients(degree, 4242, i);
    const double w = sph::evaluate_noise(coeffs, x);
    sum += w;
    sum2 += w * w;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  const double exact = (degree + 1) * (degree + 1) / (4 * M_PI);
  const double stderr_var = exact * std::sqrt(2.0 / n);
  CHECK(std::abs(mean) < 5 * std::sqrt(exact / n));
  CHECK(std::abs(var - exact) < 5 * stderr_var);
}

TEST_CASE("solution evaluation weights each degree block") {
  // with only the (l=2, m=1) cosine coefficient set, u = weight * basis entry
  const int degree = 4;
  sph::HarmonicCoefficients coeffs;
  coeffs.degree = degree;
  coeffs.xi.assign((degree + 1) * (degree + 1), 0.0);
  coeffs.xi[sph::HarmonicCoefficients::packed_index(2, 1, false)] = 1.0;
  const double kappa = 0.7, s = 0.8;
  const Vec3 x = Vec3(0.5, -0.1, 0.86).normalized();
  std::vector<double> basis((degree + 1) * (degree + 1));
  sph::evaluate_basis(degree, x, basis);
  const double weight = std::pow(kappa * kappa + 6.0, -s);
  CHECK(sph::evaluate_solution(coeffs, kappa, s, x) ==
        doctest::Approx(weight *
                        basis[sph::HarmonicCoefficients::packed_index(2, 1,
                                                                      false)])
            .epsilon(1e-13));
  CHECK(sph::evaluate_noise(coeffs, x) ==
        doctest::Approx(basis[sph::HarmonicCoefficients::packed_index(2, 1,
                                                                      false)])
            .epsilon(1e-13));
}

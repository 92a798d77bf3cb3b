#include <doctest.h>

#include <cmath>

#include "surfgrf/quadrature.hpp"

using namespace surfgrf;

namespace {

double integrate(int n, int power) {
  double sum = 0;
  for (const auto& gp : gauss_rule(n)) sum += gp.w * std::pow(gp.x, power);
  return sum;
}

}  // namespace

TEST_CASE("gauss rules integrate polynomials of degree 2n-1 exactly") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      CAPTURE(p);
      const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
      CHECK(integrate(n, p) == doctest::Approx(exact).epsilon(1e-14));
    }
  }
}

TEST_CASE("gauss weights are positive and sum to two") {
  for (int n = 1; n <= 6; ++n) {
    double sum = 0;
    for (const auto& gp : gauss_rule(n)) {
      CHECK(gp.w > 0);
      CHECK(std::abs(gp.x) < 1.0);
      sum += gp.w;
    }
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-15));
  }
}

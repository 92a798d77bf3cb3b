#pragma once

#include <span>
#include <utility>

namespace surfgrf {

struct GaussPoint {
  double x;
  double w;
};

/// Gauss-Legendre rule with n points on [-1,1], n in 1..6.
std::span<const GaussPoint> gauss_rule(int n);

}  // namespace surfgrf

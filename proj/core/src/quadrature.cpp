#include "surfgrf/quadrature.hpp"

#include <array>
#include <stdexcept>

namespace surfgrf {

namespace {

const std::array<GaussPoint, 1> g1 = {{{0.0, 2.0}}};
const std::array<GaussPoint, 2> g2 = {{{-0.5773502691896257, 1.0},
                                       {0.5773502691896257, 1.0}}};
const std::array<GaussPoint, 3> g3 = {{{-0.7745966692414834, 5.0 / 9.0},
                                       {0.0, 8.0 / 9.0},
                                       {0.7745966692414834, 5.0 / 9.0}}};
const std::array<GaussPoint, 4> g4 = {{{-0.8611363115940526, 0.3478548451374538},
                                       {-0.3399810435848563, 0.6521451548625461},
                                       {0.3399810435848563, 0.6521451548625461},
                                       {0.8611363115940526, 0.3478548451374538}}};
const std::array<GaussPoint, 5> g5 = {{{-0.9061798459386640, 0.2369268850561891},
                                       {-0.5384693101056831, 0.4786286704993665},
                                       {0.0, 0.5688888888888889},
                                       {0.5384693101056831, 0.4786286704993665},
                                       {0.9061798459386640, 0.2369268850561891}}};
const std::array<GaussPoint, 6> g6 = {{{-0.9324695142031521, 0.1713244923791704},
                                       {-0.6612093864662645, 0.3607615730481386},
                                       {-0.2386191860831969, 0.4679139345726910},
                                       {0.2386191860831969, 0.4679139345726910},
                                       {0.6612093864662645, 0.3607615730481386},
                                       {0.9324695142031521, 0.1713244923791704}}};

}  // namespace

std::span<const GaussPoint> gauss_rule(int n) {
  switch (n) {
    case 1: return g1;
    case 2: return g2;
    case 3: return g3;
    case 4: return g4;
    case 5: return g5;
    case 6: return g6;
    default: throw std::invalid_argument("gauss_rule: n must be in 1..6");
  }
}

}  // namespace surfgrf

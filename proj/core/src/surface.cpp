#include "surfgrf/surface.hpp"

#include <cmath>

namespace surfgrf {

namespace {
constexpr double kDegenerateTol = 1e-14;
}

AnalyticSurface::AnalyticSurface(Kind kind, double a, double b) : kind_(kind) {
  if (kind == Kind::Sphere) {
    if (a <= 0.0) throw std::invalid_argument("sphere radius must be positive");
    radius_ = a;
  } else {
    if (!(0.0 < b && b < a))
      throw std::invalid_argument("torus requires 0 < minor < major");
    major_ = a;
    minor_ = b;
  }
}

AnalyticSurface AnalyticSurface::sphere(double radius) {
  return AnalyticSurface(Kind::Sphere, radius, 0.0);
}

AnalyticSurface AnalyticSurface::torus(double major_radius, double minor_radius) {
  return AnalyticSurface(Kind::Torus, major_radius, minor_radius);
}

double AnalyticSurface::tube_width() const {
  return kind_ == Kind::Sphere ? radius_ : minor_;
}

double AnalyticSurface::area() const {
  if (kind_ == Kind::Sphere) return 4.0 * M_PI * radius_ * radius_;
  return 4.0 * M_PI * M_PI * major_ * minor_;
}

void AnalyticSurface::check_in_tube(const Vec3& p, double d) const {
  if (std::abs(d) >= 0.9 * tube_width())
    throw DegeneratePoint("point outside tubular neighborhood: |d| = " +
                          std::to_string(std::abs(d)) + " at (" +
                          std::to_string(p.x()) + "," + std::to_string(p.y()) +
                          "," + std::to_string(p.z()) + ")");
}

double AnalyticSurface::signed_distance(const Vec3& p) const {
  if (kind_ == Kind::Sphere) {
    const double n = p.norm();
    if (n < kDegenerateTol) throw DegeneratePoint("sphere center");
    return n - radius_;
  }
  const double rho = std::hypot(p.x(), p.z());
  if (rho < kDegenerateTol) throw DegeneratePoint("torus axis");
  const double t = std::hypot(rho - major_, p.y());
  if (t < kDegenerateTol) throw DegeneratePoint("torus center circle");
  return t - minor_;
}

Vec3 AnalyticSurface::distance_gradient(const Vec3& p) const {
  if (kind_ == Kind::Sphere) {
    const double n = p.norm();
    if (n < kDegenerateTol) throw DegeneratePoint("sphere center");
    return p / n;
  }
  const double rho = std::hypot(p.x(), p.z());
  if (rho < kDegenerateTol) throw DegeneratePoint("torus axis");
  const double a = rho - major_;
  const double t = std::hypot(a, p.y());
  if (t < kDegenerateTol) throw DegeneratePoint("torus center circle");
  const Vec3 grad_rho(p.x() / rho, 0.0, p.z() / rho);
  Vec3 g = (a / t) * grad_rho;
  g.y() += p.y() / t;
  return g;
}

Mat3 AnalyticSurface::distance_hessian(const Vec3& p) const {
  if (kind_ == Kind::Sphere) {
    const double n = p.norm();
    if (n < kDegenerateTol) throw DegeneratePoint("sphere center");
    const Vec3 u = p / n;
    return (Mat3::Identity() - u * u.transpose()) / n;
  }
  const double rho = std::hypot(p.x(), p.z());
  if (rho < kDegenerateTol) throw DegeneratePoint("torus axis");
  const double a = rho - major_;
  const double y = p.y();
  const double t = std::hypot(a, y);
  if (t < kDegenerateTol) throw DegeneratePoint("torus center circle");
  const double t3 = t * t * t;
  // d(rho, y) = sqrt((rho-R)^2 + y^2) - r in cylindrical coordinates
  const double d_rr = y * y / t3;
  const double d_ry = -a * y / t3;
  const double d_yy = a * a / t3;
  const double d_r = a / t;

  const Vec3 grad_rho(p.x() / rho, 0.0, p.z() / rho);
  Mat3 hess_rho = Mat3::Zero();
  hess_rho(0, 0) = 1.0;
  hess_rho(2, 2) = 1.0;
  hess_rho -= grad_rho * grad_rho.transpose();
  hess_rho /= rho;

  const Vec3 ey(0.0, 1.0, 0.0);
  Mat3 h = d_rr * grad_rho * grad_rho.transpose();
  h += d_ry * (grad_rho * ey.transpose() + ey * grad_rho.transpose());
  h += d_yy * ey * ey.transpose();
  h += d_r * hess_rho;
  return h;
}

Vec3 AnalyticSurface::closest_point(const Vec3& p) const {
  const double d = signed_distance(p);
  check_in_tube(p, d);
  return p - d * distance_gradient(p);
}

Mat3 AnalyticSurface::projection_jacobian(const Vec3& p) const {
  const double d = signed_distance(p);
  check_in_tube(p, d);
  const Vec3 g = distance_gradient(p);
  return Mat3::Identity() - g * g.transpose() - d * distance_hessian(p);
}

Vec3 AnalyticSurface::manifold_average(std::span<const Vec3> points,
                                       std::span<const double> weights) const {
  if (points.size() != weights.size() || points.empty())
    throw std::invalid_argument("manifold_average: size mismatch");

  if (kind_ == Kind::Sphere) {
    // Riemannian weighted mean on the sphere (tangent-space fixed point
    // iteration), seeded with the projected Euclidean average.
    Vec3 sum = Vec3::Zero();
    for (std::size_t i = 0; i < points.size(); ++i) sum += weights[i] * points[i];
    Vec3 x = sum.normalized();
    for (int it = 0; it < 100; ++it) {
      Vec3 t = Vec3::Zero();
      for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec3 dir = points[i] / radius_;
        const double c = std::clamp(x.dot(dir), -1.0, 1.0);
        const double theta = std::acos(c);
        if (theta < 1e-16) continue;
        const Vec3 tang = dir - c * x;
        const double tn = tang.norm();
        if (tn < 1e-16) continue;
        t += weights[i] * theta * tang / tn;
      }
      const double tn = t.norm();
      if (tn < 1e-15) break;
      x = std::cos(tn) * x + std::sin(tn) * (t / tn);
      x.normalize();
    }
    return radius_ * x;
  }

  // torus: average the (theta, phi) angles, unwrapped about the first point
  auto angles = [&](const Vec3& p) {
    const double rho = std::hypot(p.x(), p.z());
    return std::pair<double, double>{std::atan2(p.y(), rho - major_),
                                     std::atan2(p.z(), p.x())};
  };
  auto unwrap = [](double a, double ref) {
    while (a - ref > M_PI) a -= 2.0 * M_PI;
    while (a - ref < -M_PI) a += 2.0 * M_PI;
    return a;
  };
  const auto [theta0, phi0] = angles(points[0]);
  double theta = 0.0, phi = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [ti, pi] = angles(points[i]);
    theta += weights[i] * unwrap(ti, theta0);
    phi += weights[i] * unwrap(pi, phi0);
  }
  const double w = major_ + minor_ * std::cos(theta);
  return Vec3(w * std::cos(phi), minor_ * std::sin(theta), w * std::sin(phi));
}

double area_ratio(const AnalyticSurface& surface,
                  const std::array<Vec3, 4>& quad_corners,
                  double u, double v) {
  // Bilinear chart F(u,v) on [-1,1]^2.
  const double n0 = 0.25 * (1 - u) * (1 - v);
  const double n1 = 0.25 * (1 + u) * (1 - v);
  const double n2 = 0.25 * (1 + u) * (1 + v);
  const double n3 = 0.25 * (1 - u) * (1 + v);
  const Vec3 x = n0 * quad_corners[0] + n1 * quad_corners[1] +
                 n2 * quad_corners[2] + n3 * quad_corners[3];
  const Vec3 tu = 0.25 * ((1 - v) * (quad_corners[1] - quad_corners[0]) +
                          (1 + v) * (quad_corners[2] - quad_corners[3]));
  const Vec3 tv = 0.25 * ((1 - u) * (quad_corners[3] - quad_corners[0]) +
                          (1 + u) * (quad_corners[2] - quad_corners[1]));
  const double flat = tu.cross(tv).norm();
  if (flat <= 0.0) throw DegeneratePoint("degenerate quad chart");
  const Mat3 dp = surface.projection_jacobian(x);
  const double lifted = (dp * tu).cross(dp * tv).norm();
  return lifted / flat;
}

}  // namespace surfgrf

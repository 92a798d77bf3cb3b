#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace surfgrf {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Thrown when a point is equidistant from a continuum of surface points
/// (sphere center, torus axis or center circle) or leaves the tubular
/// neighborhood where the closest-point projection is a bijection.
struct DegeneratePoint : std::runtime_error {
  explicit DegeneratePoint(const std::string& what) : std::runtime_error(what) {}
};

/// Closed C^3 surface given in analytic form: unit-style sphere or a torus
/// of revolution about the y axis, i.e. the parametrization
///   (x,y,z) = ((R + r cos th) cos ph, r sin th, (R + r cos th) sin ph).
/// Provides the signed distance d (negative inside), its gradient and
/// Hessian in closed form, and the closest-point projection
/// P(x) = x - d(x) grad d(x).
class AnalyticSurface {
public:
  enum class Kind { Sphere, Torus };

  static AnalyticSurface sphere(double radius);
  static AnalyticSurface torus(double major_radius, double minor_radius);

  Kind kind() const { return kind_; }
  double radius() const { return radius_; }
  double major_radius() const { return major_; }
  double minor_radius() const { return minor_; }

  double signed_distance(const Vec3& p) const;
  Vec3 distance_gradient(const Vec3& p) const;
  Mat3 distance_hessian(const Vec3& p) const;
  Vec3 closest_point(const Vec3& p) const;

  /// Differential of the closest-point projection,
  /// dP = I - grad d grad d^T - d Hess d.
  Mat3 projection_jacobian(const Vec3& p) const;

  /// Curvature-limited half-width of the tubular neighborhood.  Points with
  /// |d| >= 0.9 * tube_width() are rejected as degenerate.
  double tube_width() const;

  /// Weighted average of surface points, taken on the surface itself:
  /// iterative Riemannian mean for the sphere, parameter-space average for
  /// the torus.  Used to place new vertices during mesh refinement; weights
  /// may be negative (transfinite cell-center stencils) and must sum to 1.
  Vec3 manifold_average(std::span<const Vec3> points,
                        std::span<const double> weights) const;

  /// Exact surface area |gamma|.
  double area() const;

private:
  AnalyticSurface(Kind kind, double a, double b);
  void check_in_tube(const Vec3& p, double d) const;

  Kind kind_;
  double radius_ = 0.0;  // sphere
  double major_ = 0.0;   // torus R
  double minor_ = 0.0;   // torus r
};

/// Area ratio sigma at reference coordinates (u,v) in [-1,1]^2 of the
/// bilinear chart through the four quad corners:
/// sigma = |dP t_u x dP t_v| / |t_u x t_v|, so that
/// integral_gamma v = integral_Gamma sigma (P v).
double area_ratio(const AnalyticSurface& surface,
                  const std::array<Vec3, 4>& quad_corners,
                  double u, double v);

}  // namespace surfgrf

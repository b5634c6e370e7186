#pragma once

#include <Eigen/Core>

#include "aar/errors.hpp"

namespace aar {

/// Points are stored in ambient coordinates: R^{n+1} on the unit sphere
/// (k > 0) or the upper sheet of the unit hyperboloid (k < 0), R^n for k = 0.
/// The curvature scale 1/sqrt|k| is applied to lengths only.
using Point = Eigen::VectorXd;
using Tangent = Eigen::VectorXd;

struct Tolerances {
  /// Allowed quadratic-form residual of a point on the model surface,
  /// relative to max(1, |x|^2).
  double surface = 1e-9;
  /// Slack for metric identities (arc length, law of cosines, ...).
  double metric = 1e-8;
  /// Largest excursion outside the domain of acos/acosh that is treated as
  /// rounding noise and silently clamped.
  double clamp = 1e-7;
};

/// The model space M_k^n of constant curvature k.
class ModelSpace {
 public:
  ModelSpace(double k, int n, Tolerances tol = {});

  double curvature() const noexcept { return k_; }
  int dimension() const noexcept { return n_; }
  int ambient_dimension() const noexcept { return k_ == 0.0 ? n_ : n_ + 1; }
  const Tolerances& tolerances() const noexcept { return tol_; }

  bool spherical() const noexcept { return k_ > 0.0; }
  bool hyperbolic() const noexcept { return k_ < 0.0; }
  bool flat() const noexcept { return k_ == 0.0; }

  /// D_k: pi/sqrt(k) for k > 0, +infinity otherwise.
  double diameter() const noexcept;

  /// Length of a unit-model arc after curvature scaling (1/sqrt|k|, or 1).
  double length_scale() const noexcept { return scale_; }

  /// Euclidean product for k >= 0, the Minkowski form for k < 0.
  double form(const Point& u, const Point& v) const;

  /// Throws WrongDimension or OffSurface (value = residual).
  void validate_point(const Point& x) const;
  bool is_valid(const Point& x) const noexcept;

  /// The distinguished base point: e_{n+1} for k != 0, the origin for k = 0.
  Point origin() const;

  /// Pulls an ambient vector back onto the model surface.
  Point renormalize(const Point& x) const;

  double distance(const Point& x, const Point& y) const;

  /// c(t) on the geodesic through x and y with d(x, c(t)) = |t| d(x, y).
  /// Values of t outside [0, 1] extend the geodesic.
  Point geodesic_point(const Point& x, const Point& y, double t) const;

  /// geodesic_point for t in [0, 1], but returns x when x and y coincide.
  Point interpolate(const Point& x, const Point& y, double t) const;

  /// Angle at `vertex` between the geodesics towards p and q, in [0, pi].
  double angle(const Point& vertex, const Point& p, const Point& q) const;

  /// The point z such that `center` is the midpoint of [x, z].
  Point point_reflection(const Point& center, const Point& x) const;

  /// Tangent vector at `base` pointing to y with length d(base, y).
  Tangent log_map(const Point& base, const Point& y) const;

  /// Follows the geodesic from `base` in direction v for length |v|.
  /// v is first projected onto the tangent space at `base`.
  Point exp_map(const Point& base, const Tangent& v) const;

  /// Orthogonal projection of an ambient vector onto T_base.
  Tangent to_tangent(const Point& base, const Eigen::VectorXd& v) const;

  /// Norm of a tangent vector in the metric of M_k (scaled).
  double tangent_norm(const Tangent& v) const;

  /// Points closer than this (unit-model arc length) are treated as equal.
  static constexpr double kCoincident = 1e-14;

 private:
  double unit_distance(const Point& x, const Point& y) const;
  void check_extension(double length) const;

  double k_;
  int n_;
  double scale_;
  Tolerances tol_;
};

/// Clamps `value` into [lo, hi]; an excursion larger than `slack` is a
/// logic error rather than rounding noise and raises NumericalDomain.
double clamp_checked(double value, double lo, double hi, double slack);

}  // namespace aar

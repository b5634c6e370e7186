#pragma once

#include <optional>

#include "aar/convex_sets.hpp"

namespace aar {

enum class Side { Left, Right };

constexpr Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

/// Two model spaces of different curvature identified at a single point.
class GluedSpace {
 public:
  GluedSpace(ModelSpace left, ModelSpace right, Point theta_left, Point theta_right);

  const ModelSpace& space(Side s) const { return s == Side::Left ? left_ : right_; }
  const Point& theta(Side s) const { return s == Side::Left ? theta_left_ : theta_right_; }
  const ModelSpace& left() const { return left_; }
  const ModelSpace& right() const { return right_; }

  /// min{D_k, D_k'}
  double diameter() const;

 private:
  ModelSpace left_;
  ModelSpace right_;
  Point theta_left_;
  Point theta_right_;
};

struct GluedPoint {
  Side side = Side::Left;
  Point coords;

  static GluedPoint left(Point p) { return {Side::Left, std::move(p)}; }
  static GluedPoint right(Point p) { return {Side::Right, std::move(p)}; }
};

bool is_seam(const GluedSpace& g, const GluedPoint& x);

/// True when both denote the same point of the glued space; the two copies
/// of theta compare equal.
bool same_point(const GluedSpace& g, const GluedPoint& x, const GluedPoint& y);

/// A closed convex subset of the glued space, given by a convex set on one
/// side. When theta belongs to it, `opposite` may describe the part living
/// on the other side (it must contain theta there); left empty, that part is
/// just {theta}.
class GluedSet {
 public:
  /// Throws AmbiguousSeam when dist(theta, set) lies in (1e-9, 1e-7].
  GluedSet(const GluedSpace& g, Side side, ConvexSet set,
           std::optional<ConvexSet> opposite = std::nullopt);

  Side side() const { return side_; }
  const ConvexSet& set() const { return set_; }
  const std::optional<ConvexSet>& opposite_set() const { return opposite_; }
  bool contains_theta() const { return contains_theta_; }

  /// B intersected with the given side, as a set in that model space.
  ConvexSet part(const GluedSpace& g, Side s) const;

  static constexpr double kSeamTol = 1e-9;
  static constexpr double kAmbiguousSeamTol = 1e-7;

 private:
  Side side_;
  ConvexSet set_;
  std::optional<ConvexSet> opposite_;
  bool contains_theta_ = false;
};

double glued_distance(const GluedSpace& g, const GluedPoint& x, const GluedPoint& y);

/// Geodesic interpolation for t in [0, 1]; cross-side geodesics pass through
/// theta. Same-side points also accept extension values of t.
GluedPoint glued_geodesic_point(const GluedSpace& g, const GluedPoint& x, const GluedPoint& y,
                                double t);

double glued_dist_to_set(const GluedSpace& g, const GluedSet& b, const GluedPoint& x);

/// P_B x. A point on the far side of a set missing theta projects to P_B theta.
GluedPoint glued_project(const GluedSpace& g, const GluedSet& b, const GluedPoint& x);

/// The point-gluing reflection. Requires dist(x, B) < min{D_k, D_k'}/2
/// (DomainViolation otherwise).
GluedPoint glued_reflect(const GluedSpace& g, const GluedSet& b, const GluedPoint& x);

}  // namespace aar

#include "aar/gluing.hpp"

#include <algorithm>
#include <sstream>

namespace aar {
namespace {

constexpr double kSeamPointTol = 1e-12;

// dist(theta, B) without the k > 0 uniqueness restriction: a set that is at
// least D_k/2 away from theta certainly does not contain it.
double seam_distance(const ModelSpace& space, const ConvexSet& set, const Point& theta) {
  try {
    return dist_to_set(space, set, theta);
  } catch (const GeometryError& e) {
    if (e.code() != ErrorCode::OutsideUniquenessRegime) throw;
    return 0.5 * space.diameter();
  }
}

}  // namespace

GluedSpace::GluedSpace(ModelSpace left, ModelSpace right, Point theta_left, Point theta_right)
    : left_(std::move(left)),
      right_(std::move(right)),
      theta_left_(std::move(theta_left)),
      theta_right_(std::move(theta_right)) {
  if (left_.curvature() == right_.curvature()) {
    throw GeometryError(ErrorCode::InvalidConfig, "glued spaces must have different curvature",
                        left_.curvature());
  }
  left_.validate_point(theta_left_);
  right_.validate_point(theta_right_);
}

double GluedSpace::diameter() const { return std::min(left_.diameter(), right_.diameter()); }

bool is_seam(const GluedSpace& g, const GluedPoint& x) {
  return g.space(x.side).distance(x.coords, g.theta(x.side)) <= kSeamPointTol;
}

bool same_point(const GluedSpace& g, const GluedPoint& x, const GluedPoint& y) {
  if (x.side == y.side) return g.space(x.side).distance(x.coords, y.coords) <= kSeamPointTol;
  return is_seam(g, x) && is_seam(g, y);
}

GluedSet::GluedSet(const GluedSpace& g, Side side, ConvexSet set, std::optional<ConvexSet> opposite)
    : side_(side), set_(std::move(set)), opposite_(std::move(opposite)) {
  const ModelSpace& space = g.space(side_);
  validate_set(space, set_);
  const double d = seam_distance(space, set_, g.theta(side_));
  if (d > kSeamTol && d <= kAmbiguousSeamTol) {
    std::ostringstream os;
    os << "dist(theta, B) = " << d << " is too close to the seam to decide membership";
    throw GeometryError(ErrorCode::AmbiguousSeam, os.str(), d);
  }
  contains_theta_ = d <= kSeamTol;
  if (opposite_) {
    if (!contains_theta_) {
      throw GeometryError(ErrorCode::InvalidSet,
                          "a glued set reaching both sides must contain theta");
    }
    const ModelSpace& other = g.space(aar::opposite(side_));
    validate_set(other, *opposite_);
    const double d_other = seam_distance(other, *opposite_, g.theta(aar::opposite(side_)));
    if (d_other > kSeamTol) {
      throw GeometryError(ErrorCode::InvalidSet, "opposite part must contain theta", d_other);
    }
  }
}

ConvexSet GluedSet::part(const GluedSpace& g, Side s) const {
  if (s == side_) return set_;
  if (!contains_theta_) {
    throw GeometryError(ErrorCode::InvalidQuery, "set does not reach the requested side");
  }
  if (opposite_) return *opposite_;
  return Singleton{g.theta(s)};
}

double glued_distance(const GluedSpace& g, const GluedPoint& x, const GluedPoint& y) {
  if (x.side == y.side) return g.space(x.side).distance(x.coords, y.coords);
  return g.space(x.side).distance(x.coords, g.theta(x.side)) +
         g.space(y.side).distance(g.theta(y.side), y.coords);
}

GluedPoint glued_geodesic_point(const GluedSpace& g, const GluedPoint& x, const GluedPoint& y,
                                double t) {
  if (x.side == y.side) return {x.side, g.space(x.side).geodesic_point(x.coords, y.coords, t)};
  if (t < 0.0 || t > 1.0) {
    throw GeometryError(ErrorCode::ExtensionOutOfDomain,
                        "geodesics through the seam bifurcate and cannot be extended", t);
  }
  const ModelSpace& sx = g.space(x.side);
  const ModelSpace& sy = g.space(y.side);
  const double to_seam = sx.distance(x.coords, g.theta(x.side));
  const double from_seam = sy.distance(g.theta(y.side), y.coords);
  const double s = t * (to_seam + from_seam);
  if (s < to_seam) return {x.side, sx.interpolate(x.coords, g.theta(x.side), s / to_seam)};
  if (from_seam == 0.0) return {y.side, g.theta(y.side)};
  return {y.side, sy.interpolate(g.theta(y.side), y.coords, (s - to_seam) / from_seam)};
}

double glued_dist_to_set(const GluedSpace& g, const GluedSet& b, const GluedPoint& x) {
  if (x.side == b.side() || b.contains_theta()) {
    return dist_to_set(g.space(x.side), b.part(g, x.side), x.coords);
  }
  const ModelSpace& far = g.space(x.side);
  return far.distance(x.coords, g.theta(x.side)) +
         dist_to_set(g.space(b.side()), b.set(), g.theta(b.side()));
}

GluedPoint glued_project(const GluedSpace& g, const GluedSet& b, const GluedPoint& x) {
  if (x.side == b.side() || b.contains_theta()) {
    return {x.side, project(g.space(x.side), b.part(g, x.side), x.coords)};
  }
  return {b.side(), project(g.space(b.side()), b.set(), g.theta(b.side()))};
}

GluedPoint glued_reflect(const GluedSpace& g, const GluedSet& b, const GluedPoint& x) {
  const double bound = 0.5 * g.diameter();
  double dist = 0.0;
  try {
    dist = glued_dist_to_set(g, b, x);
  } catch (const GeometryError& e) {
    if (e.code() != ErrorCode::OutsideUniquenessRegime) throw;
    dist = bound;
  }
  if (dist >= bound) {
    std::ostringstream os;
    os << "dist(x, B) = " << dist << " must stay below min{D_k, D_k'}/2 = " << bound;
    throw GeometryError(ErrorCode::DomainViolation, os.str(), dist);
  }

  // Case (1): theta in B, reflect inside the side holding x.
  if (b.contains_theta()) {
    return {x.side, reflect(g.space(x.side), b.part(g, x.side), x.coords)};
  }

  const ModelSpace& home = g.space(b.side());
  // Case (2.1): x on the side of B. The seam point is treated as living there.
  if (x.side == b.side()) return {x.side, reflect(home, b.set(), x.coords)};
  if (is_seam(g, x)) return {b.side(), reflect(home, b.set(), g.theta(b.side()))};

  // Case (2.2): continue the line through theta and P_B theta past P_B theta
  // until the distance to P_B theta equals d(x, P_B theta) = d(x, theta) + d(theta, P_B theta).
  const Point& theta = g.theta(b.side());
  const Point foot = project(home, b.set(), theta);
  const double seam_gap = home.distance(theta, foot);
  const double to_seam = g.space(x.side).distance(x.coords, g.theta(x.side));
  return {b.side(), home.geodesic_point(theta, foot, 2.0 + to_seam / seam_gap)};
}

}  // namespace aar

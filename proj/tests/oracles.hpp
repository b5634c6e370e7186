#pragma once

// Brute-force reference minimizers shared by the unit and acceptance tests.

#include <cmath>
#include <numbers>
#include <utility>

#include "aar/convex_sets.hpp"
#include "aar/sampling.hpp"

namespace aar::oracle {

inline constexpr int kGridPoints = 10000;

struct Best {
  Point point;
  double dist = 0.0;
};

/// Nearest of kGridPoints evenly spaced points of the segment.
inline Best segment_minimizer(const ModelSpace& space, const Segment& seg, const Point& x) {
  Best best{seg.a, space.distance(x, seg.a)};
  for (int j = 1; j < kGridPoints; ++j) {
    Point q = space.interpolate(seg.a, seg.b, double(j) / (kGridPoints - 1));
    const double d = space.distance(x, q);
    if (d < best.dist) best = {std::move(q), d};
  }
  return best;
}

/// Orthonormal basis of the tangent plane at a point of a 2-dimensional space.
inline std::pair<Tangent, Tangent> tangent_frame(const ModelSpace& space, Sampler& s,
                                                 const Point& base) {
  const Tangent e1 = s.unit_tangent(base);
  Tangent e2 = s.unit_tangent(base);
  e2 -= space.form(e2, e1) / space.form(e1, e1) * e1;
  return {e1, e2 / space.tangent_norm(e2)};
}

/// Nearest of kGridPoints points on the boundary circle of a ball in a
/// 2-dimensional space; valid for x outside the ball.
inline Best ball_minimizer(const ModelSpace& space, Sampler& s, const Ball& ball, const Point& x) {
  const auto [e1, e2] = tangent_frame(space, s, ball.center);
  Best best{Point(), INFINITY};
  for (int j = 0; j < kGridPoints; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / kGridPoints;
    Point q = space.exp_map(ball.center, ball.radius * (std::cos(phi) * e1 + std::sin(phi) * e2));
    const double d = space.distance(x, q);
    if (d < best.dist) best = {std::move(q), d};
  }
  return best;
}

}  // namespace aar::oracle

#pragma once

#include <string_view>
#include <variant>

#include "aar/model_space.hpp"

namespace aar {

struct Singleton {
  Point p;
};

/// Closed ball. For k > 0 the radius must stay below D_k / 2.
struct Ball {
  Point center;
  double radius = 0.0;
};

/// Geodesic segment [a, b]. For k > 0 requires d(a, b) < D_k.
struct Segment {
  Point a;
  Point b;
};

/// k < 0: {x : <x|u> <= 0} with <u|u> = 1 (a spacelike unit normal).
/// k = 0: {x : (x|u) <= offset} with |u| = 1.
/// k > 0: the closed hemisphere {x : (x|u) <= 0} with |u| = 1.
struct HalfSpace {
  Eigen::VectorXd u;
  double offset = 0.0;
};

using ConvexSet = std::variant<Singleton, Ball, Segment, HalfSpace>;

std::string_view family_name(const ConvexSet& set);

/// Checks the per-family parameter constraints; throws InvalidSet.
void validate_set(const ModelSpace& space, const ConvexSet& set);

bool contains(const ModelSpace& space, const ConvexSet& set, const Point& x, double tol);

/// Metric projection P_C x. For k > 0 requires dist(x, C) < D_k / 2
/// (OutsideUniquenessRegime otherwise).
Point project(const ModelSpace& space, const ConvexSet& set, const Point& x);

double dist_to_set(const ModelSpace& space, const ConvexSet& set, const Point& x);

/// R_C x: extends the geodesic from x through P_C x by the same length.
Point reflect(const ModelSpace& space, const ConvexSet& set, const Point& x);

}  // namespace aar

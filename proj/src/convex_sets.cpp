#include "aar/convex_sets.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace aar {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// Closest point plus distance. `unique` is false where the nearest point is
/// not determined (antipodal configurations on the sphere); `point` is then
/// only a placeholder.
struct Nearest {
  Point point;
  double dist = 0.0;
  bool unique = true;
};

Nearest nearest_singleton(const ModelSpace& space, const Singleton& s, const Point& x) {
  return {s.p, space.distance(x, s.p), true};
}

Nearest nearest_ball(const ModelSpace& space, const Ball& ball, const Point& x) {
  const double d = space.distance(x, ball.center);
  if (d <= ball.radius) return {x, 0.0, true};
  if (space.spherical() && d > space.diameter() - 1e-9) {
    return {ball.center, space.diameter() - ball.radius, false};
  }
  // The geodesic from the center through x leaves the ball at the nearest point.
  return {space.geodesic_point(ball.center, x, ball.radius / d), d - ball.radius, true};
}

Nearest nearest_segment(const ModelSpace& space, const Segment& seg, const Point& x) {
  const double length = space.distance(seg.a, seg.b);
  if (length / space.length_scale() <= ModelSpace::kCoincident) {
    return {seg.a, space.distance(x, seg.a), true};
  }
  if (space.flat()) {
    const Eigen::VectorXd ab = seg.b - seg.a;
    const double t = std::clamp((x - seg.a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    const Point p = seg.a + t * ab;
    return {p, (x - p).norm(), true};
  }

  // The full geodesic is c(s) = C(s) a + S(s) w with w the unit tangent at a
  // towards b, living in the 2-plane span(a, w) of the ambient space.
  Tangent w = space.log_map(seg.a, seg.b);
  w /= space.tangent_norm(w);
  const double theta = length / space.length_scale();

  auto clamp_to_endpoint = [&]() -> Nearest {
    const double da = space.distance(x, seg.a);
    const double db = space.distance(x, seg.b);
    if (da <= db) return {seg.a, da, true};
    return {seg.b, db, true};
  };

  if (space.spherical()) {
    const double ca = x.dot(seg.a);
    const double cw = x.dot(w);
    if (std::hypot(ca, cw) < 1e-15) {
      // x is polar to the whole great circle: every point is at pi/2.
      return {seg.a, 0.5 * space.diameter(), false};
    }
    const double phi = std::atan2(cw, ca);
    if (phi < 0.0 || phi > theta) return clamp_to_endpoint();
    const Point p = space.renormalize(std::cos(phi) * seg.a + std::sin(phi) * w);
    return {p, space.distance(x, p), true};
  }

  // k < 0: -<x|c(s)> = alpha cosh s + beta sinh s, convex in s, minimal at
  // tanh s = -beta / alpha (|beta| < alpha holds for x on the hyperboloid).
  const double alpha = -space.form(x, seg.a);
  const double beta = -space.form(x, w);
  const double s = 0.5 * std::log((alpha - beta) / (alpha + beta));
  if (!(s >= 0.0 && s <= theta)) return clamp_to_endpoint();
  const Point p = space.renormalize(std::cosh(s) * seg.a + std::sinh(s) * w);
  return {p, space.distance(x, p), true};
}

Nearest nearest_halfspace(const ModelSpace& space, const HalfSpace& h, const Point& x) {
  space.validate_point(x);
  if (space.flat()) {
    const double s = x.dot(h.u) - h.offset;
    if (s <= 0.0) return {x, 0.0, true};
    return {x - s * h.u, s, true};
  }
  const double s = space.form(x, h.u);
  if (s <= 0.0) return {x, 0.0, true};
  if (space.hyperbolic()) {
    // x = cosh(d) P + sinh(d) u with sinh(d) = <x|u>.
    const Point p = space.renormalize((x - s * h.u) / std::sqrt(1.0 + s * s));
    return {p, std::asinh(s) * space.length_scale(), true};
  }
  const double dist = std::asin(std::min(s, 1.0)) * space.length_scale();
  const Point foot = x - s * h.u;
  if (foot.norm() < 1e-15) return {x, dist, false};
  return {space.renormalize(foot), dist, true};
}

Nearest nearest(const ModelSpace& space, const ConvexSet& set, const Point& x) {
  return std::visit(overloaded{
                        [&](const Singleton& s) { return nearest_singleton(space, s, x); },
                        [&](const Ball& b) { return nearest_ball(space, b, x); },
                        [&](const Segment& s) { return nearest_segment(space, s, x); },
                        [&](const HalfSpace& h) { return nearest_halfspace(space, h, x); },
                    },
                    set);
}

Nearest nearest_checked(const ModelSpace& space, const ConvexSet& set, const Point& x) {
  Nearest n = nearest(space, set, x);
  if (!n.unique || (space.spherical() && n.dist >= 0.5 * space.diameter())) {
    std::ostringstream os;
    os << "dist(x, C) = " << n.dist << " must stay below D_k/2 = " << 0.5 * space.diameter();
    throw GeometryError(ErrorCode::OutsideUniquenessRegime, os.str(), n.dist);
  }
  return n;
}

[[noreturn]] void invalid(const std::string& what, double value = 0.0) {
  throw GeometryError(ErrorCode::InvalidSet, what, value);
}

}  // namespace

std::string_view family_name(const ConvexSet& set) {
  return std::visit(overloaded{
                        [](const Singleton&) { return std::string_view("singleton"); },
                        [](const Ball&) { return std::string_view("ball"); },
                        [](const Segment&) { return std::string_view("segment"); },
                        [](const HalfSpace&) { return std::string_view("halfspace"); },
                    },
                    set);
}

void validate_set(const ModelSpace& space, const ConvexSet& set) {
  std::visit(
      overloaded{
          [&](const Singleton& s) { space.validate_point(s.p); },
          [&](const Ball& b) {
            space.validate_point(b.center);
            if (!(b.radius >= 0.0) || !std::isfinite(b.radius)) invalid("ball radius", b.radius);
            if (space.spherical() && b.radius >= 0.5 * space.diameter()) {
              invalid("ball radius must be below D_k/2", b.radius);
            }
          },
          [&](const Segment& s) {
            space.validate_point(s.a);
            space.validate_point(s.b);
            const double length = space.distance(s.a, s.b);
            if (space.spherical() && length > space.diameter() - 1e-9) {
              invalid("segment length must be below D_k", length);
            }
          },
          [&](const HalfSpace& h) {
            if (h.u.size() != space.ambient_dimension()) {
              invalid("normal has wrong dimension", static_cast<double>(h.u.size()));
            }
            const double norm2 = space.form(h.u, h.u);
            if (std::abs(norm2 - 1.0) > space.tolerances().surface) {
              invalid("normal must satisfy (u|u) = 1", norm2);
            }
            if (!space.flat() && h.offset != 0.0) {
              invalid("offset is only meaningful for k = 0", h.offset);
            }
          },
      },
      set);
}

bool contains(const ModelSpace& space, const ConvexSet& set, const Point& x, double tol) {
  return nearest(space, set, x).dist <= tol;
}

Point project(const ModelSpace& space, const ConvexSet& set, const Point& x) {
  return nearest_checked(space, set, x).point;
}

double dist_to_set(const ModelSpace& space, const ConvexSet& set, const Point& x) {
  return nearest_checked(space, set, x).dist;
}

Point reflect(const ModelSpace& space, const ConvexSet& set, const Point& x) {
  const Nearest n = nearest_checked(space, set, x);
  if (n.dist / space.length_scale() <= ModelSpace::kCoincident) return x;
  return space.geodesic_point(x, n.point, 2.0);
}

}  // namespace aar

#include "aar/sampling.hpp"

#include <algorithm>

namespace aar {

std::string_view to_string(SetFamily f) {
  switch (f) {
    case SetFamily::Singleton: return "singleton";
    case SetFamily::Ball: return "ball";
    case SetFamily::Segment: return "segment";
    case SetFamily::HalfSpace: return "halfspace";
  }
  return "unknown";
}

Tangent Sampler::unit_tangent(const Point& base) {
  std::normal_distribution<double> gauss;
  for (;;) {
    Eigen::VectorXd g(base.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = gauss(rng_);
    const Tangent t = space_.to_tangent(base, g);
    const double norm = space_.tangent_norm(t);
    if (norm > 1e-6) return t / norm;
  }
}

Point Sampler::near(const Point& center, double max_radius) {
  return space_.exp_map(center, unit_tangent(center) * uniform(0.0, max_radius));
}

Point Sampler::anywhere_on_sphere() {
  std::normal_distribution<double> gauss;
  for (;;) {
    Eigen::VectorXd g(space_.ambient_dimension());
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = gauss(rng_);
    const double norm = g.norm();
    if (norm > 1e-6) return g / norm;
  }
}

ConvexSet Sampler::set(SetFamily family, const Point& anchor, double spread) {
  switch (family) {
    case SetFamily::Singleton:
      return Singleton{near(anchor, spread)};
    case SetFamily::Ball: {
      double cap = spread;
      if (space_.spherical()) cap = std::min(cap, 0.49 * space_.diameter());
      return Ball{near(anchor, spread), uniform(0.0, cap)};
    }
    case SetFamily::Segment: {
      double reach = spread;
      if (space_.spherical()) reach = std::min(reach, 0.9 * space_.diameter());
      Point a = near(anchor, spread);
      Point b = near(a, reach);
      return Segment{std::move(a), std::move(b)};
    }
    case SetFamily::HalfSpace: {
      if (space_.hyperbolic()) {
        const Point q = near(anchor, spread);
        return HalfSpace{unit_tangent(q), 0.0};
      }
      if (space_.spherical()) return HalfSpace{anywhere_on_sphere(), 0.0};
      const Point q = near(anchor, spread);
      Eigen::VectorXd u = unit_tangent(q);
      const double offset = u.dot(q);
      return HalfSpace{std::move(u), offset};
    }
  }
  return Singleton{anchor};
}

}  // namespace aar

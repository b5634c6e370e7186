#include "aar/solver.hpp"

#include <cmath>
#include <sstream>

namespace aar {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void bad_config(const std::string& what, double value = 0.0) {
  throw GeometryError(ErrorCode::InvalidConfig, what, value);
}

// Uniform view of a model space and a point-gluing for the iteration.
struct ModelGeometry {
  using point_type = Point;
  using set_type = ConvexSet;

  const ModelSpace& space;

  double distance(const Point& x, const Point& y) const { return space.distance(x, y); }
  Point between(const Point& x, const Point& y, double t) const {
    return space.interpolate(x, y, t);
  }
  Point project(const ConvexSet& c, const Point& x) const { return aar::project(space, c, x); }
  Point reflect(const ConvexSet& c, const Point& x) const { return aar::reflect(space, c, x); }
  double dist_to_set(const ConvexSet& c, const Point& x) const {
    return aar::dist_to_set(space, c, x);
  }
};

struct GluedGeometry {
  using point_type = GluedPoint;
  using set_type = GluedSet;

  const GluedSpace& space;

  double distance(const GluedPoint& x, const GluedPoint& y) const {
    return glued_distance(space, x, y);
  }
  GluedPoint between(const GluedPoint& x, const GluedPoint& y, double t) const {
    if (same_point(space, x, y)) return x;
    return glued_geodesic_point(space, x, y, t);
  }
  GluedPoint project(const GluedSet& c, const GluedPoint& x) const {
    return glued_project(space, c, x);
  }
  GluedPoint reflect(const GluedSet& c, const GluedPoint& x) const {
    return glued_reflect(space, c, x);
  }
  double dist_to_set(const GluedSet& c, const GluedPoint& x) const {
    return glued_dist_to_set(space, c, x);
  }
};

template <class Geometry>
typename Geometry::point_type km_step_impl(const Geometry& geo,
                                           const typename Geometry::set_type& A,
                                           const typename Geometry::set_type& B,
                                           const typename Geometry::point_type& x, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) bad_config("lambda must lie in [0, 1]", lambda);
  const auto reflected = geo.reflect(A, geo.reflect(B, x));
  if (lambda == 0.0) return x;
  return geo.between(x, reflected, lambda);
}

template <class Geometry, class InRegion>
SolveResult<typename Geometry::point_type> iterate(const Geometry& geo,
                                                   const typename Geometry::set_type& A,
                                                   const typename Geometry::set_type& B,
                                                   const typename Geometry::point_type& x0,
                                                   const SolverConfig& config,
                                                   InRegion&& in_region) {
  using P = typename Geometry::point_type;
  SolveResult<P> result;
  P x = x0;

  auto fail = [&](int n, const std::string& what) {
    result.status = SolveStatus::DomainError;
    result.iterations = n;
    result.final_x = x;
    result.shadow = x;
    result.certificate = {std::nan(""), std::nan("")};
    result.message = what;
    result.failed_index = n;
    return result;
  };

  for (int n = 0; n < config.max_iter; ++n) {
    IterateRecord<P> rec;
    P next;
    double dist_B = 0.0;
    try {
      if (!in_region(x)) {
        std::ostringstream os;
        os << "iterate " << n << " left the invariant region";
        return fail(n, os.str());
      }
      rec.shadow = geo.project(B, x);
      rec.dist_A_of_shadow = geo.dist_to_set(A, rec.shadow);
      dist_B = geo.dist_to_set(B, rec.shadow);
      next = km_step_impl(geo, A, B, x, config.lambda_at(static_cast<std::size_t>(n)));
      rec.step = geo.distance(x, next);
    } catch (const GeometryError& e) {
      return fail(n, e.what());
    }
    rec.n = n;
    rec.x = x;
    result.trace.push_back(rec);
    if (rec.step <= config.eps && rec.dist_A_of_shadow <= config.feas_tol &&
        dist_B <= config.feas_tol) {
      result.status = SolveStatus::Converged;
      result.iterations = n;
      result.final_x = x;
      result.shadow = rec.shadow;
      result.certificate = {rec.dist_A_of_shadow, dist_B};
      return result;
    }
    x = std::move(next);
  }

  try {
    if (!in_region(x)) return fail(config.max_iter, "final iterate left the invariant region");
    result.shadow = geo.project(B, x);
    result.certificate = {geo.dist_to_set(A, result.shadow), geo.dist_to_set(B, result.shadow)};
  } catch (const GeometryError& e) {
    return fail(config.max_iter, e.what());
  }
  result.status = SolveStatus::MaxIterReached;
  result.iterations = config.max_iter;
  result.final_x = x;
  return result;
}

template <class Geometry>
bool fejer_impl(const Geometry& geo,
                const std::vector<IterateRecord<typename Geometry::point_type>>& trace,
                const typename Geometry::point_type& p, double tol) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (geo.distance(trace[i].x, p) > geo.distance(trace[i - 1].x, p) + tol) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(Method m) { return m == Method::AAR ? "aar" : "km"; }

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterReached: return "max_iter_reached";
    case SolveStatus::DomainError: return "domain_error";
  }
  return "unknown";
}

LambdaSchedule LambdaSchedule::constant(double lambda, int K) {
  return LambdaSchedule(Kind::Constant, {lambda}, K);
}

LambdaSchedule LambdaSchedule::list(std::vector<double> values, int K) {
  return LambdaSchedule(Kind::List, std::move(values), K);
}

double LambdaSchedule::at(std::size_t n) const {
  return values_[std::min(n, values_.size() - 1)];
}

void LambdaSchedule::validate() const {
  if (K_ < 2) bad_config("lambda band parameter K must be >= 2", K_);
  if (values_.empty()) bad_config("lambda schedule is empty");
  const double lo = 1.0 / K_;
  const double hi = 1.0 - 1.0 / K_;
  for (double v : values_) {
    if (!(v >= lo && v <= hi)) {
      std::ostringstream os;
      os << "lambda " << v << " outside [1/K, 1 - 1/K] = [" << lo << ", " << hi << "]";
      bad_config(os.str(), v);
    }
  }
}

void SolverConfig::validate() const {
  if (!(eps > 0.0)) bad_config("eps must be positive", eps);
  if (!(feas_tol > 0.0)) bad_config("feas_tol must be positive", feas_tol);
  if (max_iter < 0) bad_config("max_iter must be nonnegative", max_iter);
  if (method == Method::KM) lambda.validate();
}

Point aar_step(const ModelSpace& space, const ConvexSet& A, const ConvexSet& B, const Point& x) {
  return km_step_impl(ModelGeometry{space}, A, B, x, 0.5);
}

GluedPoint aar_step(const GluedSpace& space, const GluedSet& A, const GluedSet& B,
                    const GluedPoint& x) {
  return km_step_impl(GluedGeometry{space}, A, B, x, 0.5);
}

Point km_step(const ModelSpace& space, const ConvexSet& A, const ConvexSet& B, const Point& x,
              double lambda) {
  return km_step_impl(ModelGeometry{space}, A, B, x, lambda);
}

GluedPoint km_step(const GluedSpace& space, const GluedSet& A, const GluedSet& B,
                   const GluedPoint& x, double lambda) {
  return km_step_impl(GluedGeometry{space}, A, B, x, lambda);
}

bool set_within_ball(const ModelSpace& space, const ConvexSet& set, const Ball& ball, double tol) {
  auto inside = [&](const Point& p) { return space.distance(p, ball.center) <= ball.radius + tol; };
  return std::visit(overloaded{
                        [&](const Singleton& s) { return inside(s.p); },
                        [&](const Ball& b) {
                          return space.distance(b.center, ball.center) + b.radius <=
                                 ball.radius + tol;
                        },
                        [&](const Segment& s) { return inside(s.a) && inside(s.b); },
                        [](const HalfSpace&) { return false; },
                    },
                    set);
}

SolveResult<Point> solve(const ModelProblem& problem, const SolverConfig& config) {
  config.validate();
  const ModelSpace& space = problem.space;
  validate_set(space, problem.A);
  validate_set(space, problem.B);
  space.validate_point(problem.x0);

  if (problem.region) {
    const Ball& c = *problem.region;
    validate_set(space, c);
    if (space.spherical() && c.radius >= 0.25 * space.diameter()) {
      bad_config("invariant region radius must be below D_k/4", c.radius);
    }
    if (!set_within_ball(space, problem.A, c) || !set_within_ball(space, problem.B, c)) {
      bad_config("A and B must lie inside the invariant region");
    }
    if (!contains(space, c, problem.x0, 1e-9)) bad_config("x0 must lie in the invariant region");
  }

  auto in_region = [&](const Point& x) {
    return !problem.region || contains(space, *problem.region, x, 1e-9);
  };
  return iterate(ModelGeometry{space}, problem.A, problem.B, problem.x0, config, in_region);
}

SolveResult<GluedPoint> solve(const GluedProblem& problem, const SolverConfig& config) {
  config.validate();
  problem.space.space(problem.x0.side).validate_point(problem.x0.coords);
  return iterate(GluedGeometry{problem.space}, problem.A, problem.B, problem.x0, config,
                 [](const GluedPoint&) { return true; });
}

bool fejer_check(const ModelSpace& space, const std::vector<IterateRecord<Point>>& trace,
                 const Point& p, double tol) {
  return fejer_impl(ModelGeometry{space}, trace, p, tol);
}

bool fejer_check(const GluedSpace& space, const std::vector<IterateRecord<GluedPoint>>& trace,
                 const GluedPoint& p, double tol) {
  return fejer_impl(GluedGeometry{space}, trace, p, tol);
}

}  // namespace aar

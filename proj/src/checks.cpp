#include "aar/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "aar/experiments.hpp"
#include "aar/gluing.hpp"
#include "aar/sampling.hpp"
#include "aar/solver.hpp"

namespace aar {
namespace {

constexpr double kNonexpTol = 1e-9;

SetFamily parse_family(std::string_view name) {
  for (SetFamily f : kAllFamilies)
    if (to_string(f) == name) return f;
  throw std::invalid_argument("unknown set family: " + std::string(name));
}

std::string suite_name(std::string_view what, double k, std::string_view family = {}) {
  std::ostringstream os;
  os << what << " k=" << k;
  if (!family.empty()) os << ' ' << family;
  return os.str();
}

// Typical distance scale for draws: a few curvature radii when k <= 0, a
// fraction of the diameter on the sphere.
double spread_for(const ModelSpace& space) {
  return space.spherical() ? 0.4 * space.diameter() : 1.5 * space.length_scale();
}

Point draw_point(Sampler& s) {
  const ModelSpace& space = s.space();
  if (space.spherical()) return s.anywhere_on_sphere();
  return s.near(space.origin(), 3.0 * space.length_scale());
}

Point draw_partner(Sampler& s, const Point& x) {
  const ModelSpace& space = s.space();
  if (s.uniform() < 1.0 / 3.0) {
    const double r = space.spherical() ? 0.05 * space.diameter() : 0.3 * space.length_scale();
    return s.near(x, r);
  }
  return draw_point(s);
}

bool is_regime_error(const GeometryError& e) {
  return e.code() == ErrorCode::OutsideUniquenessRegime || e.code() == ErrorCode::DomainViolation;
}

// Points of the set used to probe the variational inequality at P.
std::vector<Point> probe_points(Sampler& s, const ConvexSet& set, const Point& anchor) {
  const ModelSpace& space = s.space();
  std::vector<Point> out;
  constexpr int kProbes = 32;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Singleton>) {
          out.push_back(c.p);
        } else if constexpr (std::is_same_v<T, Ball>) {
          for (int j = 0; j < kProbes; ++j) {
            const double r = (j % 2 == 0) ? c.radius : c.radius * s.uniform();
            out.push_back(space.exp_map(c.center, s.unit_tangent(c.center) * r));
          }
        } else if constexpr (std::is_same_v<T, Segment>) {
          for (int j = 0; j < kProbes; ++j)
            out.push_back(space.interpolate(c.a, c.b, double(j) / (kProbes - 1)));
        } else {
          const double r = space.spherical() ? 0.2 * space.diameter() : space.length_scale();
          for (int j = 0; j < kProbes; ++j) {
            Point z = s.near(anchor, r);
            if (!contains(space, set, z, 0.0)) z = project(space, set, z);
            out.push_back(std::move(z));
          }
        }
      },
      set);
  return out;
}

// Set containing p with some margin, for the solver instances.
ConvexSet feasible_set(Sampler& s, SetFamily family, const Point& p, Tangent* direction) {
  const ModelSpace& space = s.space();
  switch (family) {
    case SetFamily::Singleton:
      return Singleton{p};
    case SetFamily::Ball: {
      Point c = s.near(p, 1.0);
      const double r = space.distance(c, p) + s.uniform(0.1, 1.0);
      return Ball{std::move(c), r};
    }
    case SetFamily::Segment: {
      const Tangent v = s.unit_tangent(p);
      if (direction) *direction = v;
      Point a = space.exp_map(p, v * s.uniform(0.2, 1.5));
      Point b = space.exp_map(p, v * -s.uniform(0.2, 1.5));
      return Segment{std::move(a), std::move(b)};
    }
    case SetFamily::HalfSpace: {
      const Tangent v = s.unit_tangent(p);
      const double margin = s.uniform(0.05, 0.5);
      if (space.flat()) return HalfSpace{v, v.dot(p) + margin};
      const Point q = space.exp_map(p, v * margin);
      Tangent u = -space.log_map(q, p);
      u /= std::sqrt(space.form(u, u));
      return HalfSpace{u, 0.0};
    }
  }
  return Singleton{p};
}

}  // namespace

SuiteReport reflection_nonexpansivity(double k, std::string_view family, std::size_t samples,
                                      std::uint64_t seed) {
  const SetFamily fam = parse_family(family);
  const ModelSpace space(k, 2);
  Sampler s(space, seed);
  SuiteReport r;
  r.name = suite_name("reflection", k, family);

  const std::size_t max_attempts = 20 * samples + 100;
  for (std::size_t attempt = 0; r.checked < samples && attempt < max_attempts; ++attempt) {
    const ConvexSet set = s.set(fam, space.origin(), spread_for(space));
    const Point x = draw_point(s);
    const Point y = draw_partner(s, x);
    try {
      const Point rx = reflect(space, set, x);
      const Point ry = reflect(space, set, y);
      r.record(space.distance(rx, ry) - space.distance(x, y), kNonexpTol);
    } catch (const GeometryError& e) {
      if (!is_regime_error(e)) throw;
      ++r.rejected;
    }
  }
  return r;
}

SuiteReport glued_reflection_nonexpansivity(std::size_t samples, std::uint64_t seed) {
  static constexpr std::array<std::pair<double, double>, 8> kPairs{{
      {-1, 0}, {0, -1}, {-1, 1}, {1, -4}, {0, 1}, {-4, -1}, {4, 0}, {1, 4},
  }};
  std::mt19937_64 master(seed);
  SuiteReport r;
  r.name = "glued reflection";

  const std::size_t max_attempts = 20 * samples + 100;
  for (std::size_t attempt = 0; r.checked < samples && attempt < max_attempts; ++attempt) {
    const auto [kl, kr] = kPairs[attempt % kPairs.size()];
    const ModelSpace left(kl, 2), right(kr, 2);
    Sampler sl(left, master()), sr(right, master());
    auto sampler = [&](Side side) -> Sampler& { return side == Side::Left ? sl : sr; };

    const Point tl = sl.near(left.origin(), 0.5 * left.length_scale());
    const Point tr = sr.near(right.origin(), 0.5 * right.length_scale());
    const GluedSpace g(left, right, tl, tr);

    Sampler& home_s = sampler(sl.uniform() < 0.5 ? Side::Left : Side::Right);
    const Side home = &home_s == &sl ? Side::Left : Side::Right;
    const ModelSpace& hs = g.space(home);
    const Point& theta = g.theta(home);
    const double spread = spread_for(hs);
    const SetFamily fam = kAllFamilies[home_s.index(4)];
    const bool through_theta = home_s.uniform() < 0.5;

    std::optional<GluedSet> b;
    try {
      ConvexSet set = Singleton{theta};
      std::optional<ConvexSet> other;
      if (through_theta) {
        switch (fam) {
          case SetFamily::Singleton:
            break;
          case SetFamily::Ball: {
            Point c = home_s.near(theta, 0.5 * spread);
            double radius = hs.distance(c, theta) + home_s.uniform(0.05, 0.5) * spread;
            if (hs.spherical()) radius = std::min(radius, 0.49 * hs.diameter());
            set = Ball{std::move(c), radius};
            break;
          }
          case SetFamily::Segment: {
            const Tangent v = home_s.unit_tangent(theta);
            const double back = home_s.uniform() < 0.3 ? 0.0 : home_s.uniform(0.0, 0.5) * spread;
            set = Segment{hs.exp_map(theta, v * -back),
                          hs.exp_map(theta, v * home_s.uniform(0.05, 1.0) * spread)};
            break;
          }
          case SetFamily::HalfSpace: {
            ConvexSet h = home_s.set(SetFamily::HalfSpace, theta, spread);
            auto& hsp = std::get<HalfSpace>(h);
            if (hs.flat()) {
              hsp.offset = hsp.u.dot(theta) + home_s.uniform(0.0, 0.5) * spread;
            } else if (hs.form(theta, hsp.u) > 0.0) {
              hsp.u = -hsp.u;
            }
            set = std::move(h);
            break;
          }
        }
        if (home_s.uniform() < 0.5) {
          const Side far = opposite(home);
          const ModelSpace& fs = g.space(far);
          Sampler& far_s = sampler(far);
          Point c = far_s.near(g.theta(far), 0.3 * spread_for(fs));
          double radius = fs.distance(c, g.theta(far)) + far_s.uniform(0.05, 0.5) * spread_for(fs);
          if (fs.spherical()) radius = std::min(radius, 0.49 * fs.diameter());
          other = Ball{std::move(c), radius};
        }
      } else {
        set = home_s.set(fam, home_s.near(theta, spread), spread);
        if (dist_to_set(hs, set, theta) < 1e-3 * hs.length_scale()) {
          ++r.rejected;
          continue;
        }
      }
      b.emplace(g, home, std::move(set), std::move(other));
    } catch (const GeometryError& e) {
      if (!is_regime_error(e) && e.code() != ErrorCode::AmbiguousSeam &&
          e.code() != ErrorCode::InvalidSet)
        throw;
      ++r.rejected;
      continue;
    }

    auto draw = [&](Side side) {
      Sampler& ss = sampler(side);
      const ModelSpace& sp = g.space(side);
      const double radius = sp.spherical() ? 0.45 * sp.diameter() : 2.0 * sp.length_scale();
      return GluedPoint{side, ss.near(g.theta(side), radius)};
    };
    const GluedPoint x = draw(sl.uniform() < 0.5 ? Side::Left : Side::Right);
    GluedPoint y;
    if (sl.uniform() < 1.0 / 3.0) {
      const ModelSpace& sp = g.space(x.side);
      y = {x.side, sampler(x.side).near(x.coords, 0.1 * std::min(sp.length_scale(), sp.diameter()))};
    } else {
      y = draw(sl.uniform() < 0.5 ? Side::Left : Side::Right);
    }

    try {
      const GluedPoint rx = glued_reflect(g, *b, x);
      const GluedPoint ry = glued_reflect(g, *b, y);
      r.record(glued_distance(g, rx, ry) - glued_distance(g, x, y), kNonexpTol);
    } catch (const GeometryError& e) {
      if (!is_regime_error(e)) throw;
      ++r.rejected;
      continue;
    }

    std::string key;
    if (b->contains_theta()) {
      key = x.side == y.side ? "(1) same-side" : "(1) cross-side";
    } else {
      const int far = int(x.side != home) + int(y.side != home);
      key = far == 0 ? "(2.1) both-near" : far == 2 ? "(2.2) both-far" : "(2) mixed";
    }
    ++r.breakdown[key];
  }
  return r;
}

SuiteReport projection_properties(double k, std::string_view family, std::size_t samples,
                                  std::uint64_t seed) {
  const SetFamily fam = parse_family(family);
  const ModelSpace space(k, 2);
  Sampler s(space, seed);
  SuiteReport r;
  r.name = suite_name("projection", k, family);

  const std::size_t max_attempts = 20 * samples + 100;
  for (std::size_t attempt = 0; r.checked < samples && attempt < max_attempts; ++attempt) {
    const ConvexSet set = s.set(fam, space.origin(), spread_for(space));
    const Point x = draw_point(s);
    const Point x2 = draw_partner(s, x);
    try {
      const Point p = project(space, set, x);
      const double dist = dist_to_set(space, set, x);
      double excess = -1e300;
      auto note = [&](const char* what, double e) {
        if (e > 0.0) ++r.breakdown[what];
        excess = std::max(excess, e);
      };

      note("membership", dist_to_set(space, set, p) - 1e-9);
      note("distance", std::abs(space.distance(x, p) - dist) - 1e-9);

      if (dist > 1e-6 * space.length_scale()) {
        double worst = std::numbers::pi;
        for (const Point& z : probe_points(s, set, p))
          if (space.distance(p, z) > 1e-7 * space.length_scale())
            worst = std::min(worst, space.angle(p, x, z));
        note("variational angle", (std::numbers::pi / 2 - 1e-6) - worst);
      }

      const Point mid = space.interpolate(x, p, s.uniform());
      note("segment consistency", space.distance(project(space, set, mid), p) - 1e-8);

      if (!space.spherical()) {
        const Point p2 = project(space, set, x2);
        note("nonexpansive", space.distance(p, p2) - space.distance(x, x2) - 1e-9);
      }
      r.record(excess, 0.0);
    } catch (const GeometryError& e) {
      if (!is_regime_error(e)) throw;
      ++r.rejected;
    }
  }
  return r;
}

SuiteReport solver_convergence(double k, std::size_t instances, std::uint64_t seed) {
  const ModelSpace space(k, 2);
  Sampler s(space, seed);
  SuiteReport r;
  r.name = suite_name("solver", k);

  SolverConfig cfg;
  cfg.method = Method::AAR;
  cfg.eps = 1e-10;
  cfg.feas_tol = 1e-8;
  cfg.max_iter = 100000;
  constexpr double kRateEps = 0.1;

  const std::size_t max_attempts = 20 * instances + 100;
  for (std::size_t attempt = 0; r.checked < instances && attempt < max_attempts; ++attempt) {
    const Point p = s.near(space.origin(), 1.0);
    const SetFamily fa = kAllFamilies[s.index(4)];
    const SetFamily fb = kAllFamilies[s.index(4)];
    Tangent va, vb;
    ModelProblem prob{space, feasible_set(s, fa, p, &va), feasible_set(s, fb, p, &vb),
                      s.near(p, 3.0), std::nullopt};
    if (fa == SetFamily::Segment && fb == SetFamily::Segment) {
      const double c = std::abs(space.form(va, vb));
      if (c > std::cos(0.2)) {
        ++r.rejected;
        continue;
      }
    }

    const SolveResult<Point> res = solve(prob, cfg);
    double excess = -1e300;
    auto note = [&](const char* what, bool failed) {
      if (failed) ++r.breakdown[what];
      excess = std::max(excess, failed ? 1.0 : -1.0);
    };
    note("not converged", res.status != SolveStatus::Converged);
    note("certificate", !(res.certificate.dist_A <= 1e-8 && res.certificate.dist_B <= 1e-8));
    note("fejer", !fejer_check(space, res.trace, p));

    const double b = std::max(2.0 * space.distance(prob.x0, p), 1e-6);
    const RateBound bound = rate_bound({kRateEps, b, 2, std::nullopt});
    std::optional<int> first;
    for (const auto& rec : res.trace)
      if (rec.step <= kRateEps) {
        first = rec.n;
        break;
      }
    note("rate bound", !first || (*first > 0 && std::log10(double(*first)) > bound.log10_value));

    r.record(excess, 0.0);
    ++r.breakdown[std::string(to_string(fa)) + "/" + std::string(to_string(fb))];
  }
  return r;
}

SuiteReport appendix_harness(double k, std::size_t samples, std::uint64_t seed) {
  const ModelSpace space(k, 2);
  Sampler s(space, seed);
  SuiteReport r;
  r.name = suite_name("appendix", k);
  const double L = space.length_scale();

  const std::size_t max_attempts = 50 * samples + 100;
  for (std::size_t attempt = 0; r.checked < samples && attempt < max_attempts; ++attempt) {
    const Point a = s.near(space.origin(), 0.5 * L);
    const Point b = s.near(space.origin(), 0.5 * L);
    Point x = s.near(a, 0.6 * L);
    Point y = s.near(b, 0.6 * L);
    const int mode = int(attempt % 3);
    if (mode == 0) {
      x = a;
    } else if (mode == 1) {
      const double A = space.distance(x, a), B = space.distance(y, b);
      if (A < 1e-6 * L || B < 1e-6 * L) {
        ++r.rejected;
        continue;
      }
      y = space.geodesic_point(b, y, A / B);
    }
    try {
      const Point xp = space.point_reflection(a, x);
      const Point yp = space.point_reflection(b, y);
      const auto cfg = AppendixConfig::from_endpoints(space, x, xp, y, yp);
      const AppendixVerdict v = appendix_check(cfg);
      if (v.grid_holds && !v.hypothesis_holds && !v.conclusion_holds)
        ++r.breakdown["grid-only false positive"];
      if (!v.hypothesis_holds || v.case_ == AppendixCase::None) {
        ++r.rejected;
        continue;
      }
      ++r.breakdown[std::string("case ") + std::string(to_string(v.case_))];
      r.record(v.d_xpyp - v.d_xy, 1e-9);
    } catch (const GeometryError& e) {
      if (e.code() != ErrorCode::InvalidConfig && e.code() != ErrorCode::DegenerateGeodesic &&
          e.code() != ErrorCode::ExtensionOutOfDomain)
        throw;
      ++r.rejected;
    }
  }
  return r;
}

std::vector<SuiteReport> run_suite(std::string_view suite, const CheckOptions& o) {
  const bool all = suite == "all";
  if (!all && suite != "nonexpansivity" && suite != "projection" && suite != "solver" &&
      suite != "appendix")
    throw std::invalid_argument("unknown suite: " + std::string(suite));

  std::vector<SuiteReport> out;
  std::uint64_t stream = 0;
  auto next_seed = [&] { return o.seed * 1000003ULL + (++stream); };

  if (all || suite == "nonexpansivity") {
    for (double k : kSuiteCurvatures)
      for (SetFamily f : kAllFamilies)
        out.push_back(reflection_nonexpansivity(k, to_string(f), o.samples, next_seed()));
    out.push_back(glued_reflection_nonexpansivity(o.samples, next_seed()));
  }
  if (all || suite == "projection") {
    for (double k : kSuiteCurvatures)
      for (SetFamily f : kAllFamilies)
        out.push_back(projection_properties(k, to_string(f), o.samples, next_seed()));
  }
  if (all || suite == "solver") {
    for (double k : {-1.0, 0.0}) out.push_back(solver_convergence(k, o.samples, next_seed()));
  }
  if (all || suite == "appendix") {
    for (double k : {-1.0, 1.0, 0.0}) out.push_back(appendix_harness(k, o.samples, next_seed()));
  }
  return out;
}

std::string format_report(const SuiteReport& r) {
  std::ostringstream os;
  os << r.name << ": checked=" << r.checked << " rejected=" << r.rejected
     << " violations=" << r.violations;
  if (r.checked > 0) os << " worst_excess=" << r.worst_excess;
  for (const auto& [key, count] : r.breakdown) os << " [" << key << ": " << count << ']';
  return os.str();
}

}  // namespace aar

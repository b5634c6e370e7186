#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "aar/checks.hpp"
#include "aar/convex_sets.hpp"
#include "oracles.hpp"

using namespace aar;

namespace {

Point P(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

const double kS2 = std::sqrt(2.0) / 2.0;
const double kPi = std::numbers::pi;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no GeometryError thrown";
  return ErrorCode::InvalidQuery;
}

}  // namespace

TEST(ConvexSets, Contains) {
  const ModelSpace h(-1, 2);
  const Point c = h.origin();
  EXPECT_TRUE(contains(h, Ball{c, 0.5}, c, 0.0));
  const Point a = P({0, std::sinh(1.0), std::cosh(1.0)});
  EXPECT_TRUE(contains(h, Segment{a, c}, a, 0.0));
  const ModelSpace s(1, 2);
  EXPECT_FALSE(contains(s, HalfSpace{P({0, 0, 1})}, P({0, 0, 1}), 1e-9));
  EXPECT_TRUE(contains(s, HalfSpace{P({0, 0, 1})}, P({1, 0, 0}), 1e-9));
}

TEST(ConvexSets, ValidationRejectsBadParameters) {
  const ModelSpace s(1, 2);
  EXPECT_EQ(code_of([&] { validate_set(s, Ball{P({1, 0, 0}), kPi / 2}); }), ErrorCode::InvalidSet);
  EXPECT_EQ(code_of([&] { validate_set(s, Segment{P({1, 0, 0}), P({-1, 0, 0})}); }),
            ErrorCode::InvalidSet);
  EXPECT_EQ(code_of([&] { validate_set(s, HalfSpace{P({0, 0, 2})}); }), ErrorCode::InvalidSet);
  const ModelSpace h(-1, 2);
  EXPECT_EQ(code_of([&] { validate_set(h, HalfSpace{P({0, 1, 0}), 0.5}); }), ErrorCode::InvalidSet);
  EXPECT_EQ(code_of([&] { validate_set(h, Ball{h.origin(), -1.0}); }), ErrorCode::InvalidSet);
  EXPECT_EQ(code_of([&] { validate_set(h, Segment{h.origin(), P({0, 0, 2})}); }),
            ErrorCode::OffSurface);
}

TEST(ConvexSets, MembersAreFixed) {
  const ModelSpace h(-1, 2);
  const Point x = P({0, std::sinh(0.3), std::cosh(0.3)});
  const ConvexSet ball = Ball{h.origin(), 0.5};
  EXPECT_EQ(project(h, ball, x), x);
  EXPECT_EQ(reflect(h, ball, x), x);
  EXPECT_EQ(dist_to_set(h, ball, x), 0.0);
}

TEST(ConvexSets, HyperbolicHalfSpaceExample) {
  const ModelSpace h(-1, 2);
  const ConvexSet half = HalfSpace{P({0, 1, 0})};
  const Point x = P({0, std::sinh(1.0), std::cosh(1.0)});

  // Reference: minimize cosh d(x, (sinh s, 0, cosh s)) = cosh(1) cosh(s) on a dense grid.
  double best_s = 0.0, best = INFINITY;
  for (int j = -20000; j <= 20000; ++j) {
    const double s = j * 1e-4;
    const Point q = P({std::sinh(s), 0, std::cosh(s)});
    const double v = -h.form(x, q);
    if (v < best) best = v, best_s = s;
  }
  const Point oracle = P({std::sinh(best_s), 0, std::cosh(best_s)});

  const Point p = project(h, half, x);
  EXPECT_LT((p - P({0, 0, 1})).norm(), 1e-14);
  EXPECT_LT(h.distance(p, oracle), 1e-12);
  EXPECT_NEAR(dist_to_set(h, half, x), 1.0, 1e-14);
  EXPECT_NEAR(dist_to_set(h, half, x), std::acosh(best), 1e-12);

  const Point r = reflect(h, half, x);
  EXPECT_LT((r - P({0, -std::sinh(1.0), std::cosh(1.0)})).norm(), 1e-13);
  EXPECT_NEAR(h.distance(r, p), h.distance(x, p), 1e-13);
  EXPECT_NEAR(h.distance(x, r), 2.0, 1e-13);
}

TEST(ConvexSets, SphericalSegmentExample) {
  const ModelSpace s(1, 2);
  const Point a = P({1, 0, 0}), b = P({kS2, kS2, 0}), pole = P({0, 0, 1});
  const Point c = s.geodesic_point(a, pole, 0.25);
  ASSERT_NEAR(s.distance(a, c), kPi / 8, 1e-15);
  const ConvexSet seg = Segment{a, b};
  EXPECT_LT(s.distance(project(s, seg, c), a), 1e-15);

  const Point r = reflect(s, seg, c);
  EXPECT_NEAR(s.distance(r, a), kPi / 8, 1e-14);
  EXPECT_NEAR(s.distance(c, r), kPi / 4, 1e-14);
  EXPECT_LT((r - P({std::cos(kPi / 8), 0, -std::sin(kPi / 8)})).norm(), 1e-14);
}

TEST(ConvexSets, BallDistanceAlongRadius) {
  for (double k : {-1.0, 0.0, 1.0}) {
    const ModelSpace space(k, 2);
    Sampler smp(space, 3);
    const Point c = space.origin();
    const Tangent v = smp.unit_tangent(c);
    const Point x = space.exp_map(c, v * 1.3);
    EXPECT_NEAR(dist_to_set(space, Ball{c, 0.8}, x), 0.5, 1e-13) << "k=" << k;
    EXPECT_NEAR(space.distance(project(space, Ball{c, 0.8}, x), c), 0.8, 1e-13);
  }
}

TEST(ConvexSets, DegenerateSegmentBehavesAsPoint) {
  const ModelSpace e(0, 2);
  const ConvexSet seg = Segment{P({1, 2}), P({1, 2})};
  EXPECT_EQ(project(e, seg, P({4, 6})), P({1, 2}));
  EXPECT_DOUBLE_EQ(dist_to_set(e, seg, P({4, 6})), 5.0);
}

TEST(ConvexSets, SphericalUniquenessRegimeIsEnforced) {
  const ModelSpace s(1, 2);
  const ConvexSet single = Singleton{P({1, 0, 0})};
  EXPECT_EQ(code_of([&] { project(s, single, P({0, 1, 0})); }), ErrorCode::OutsideUniquenessRegime);
  EXPECT_EQ(code_of([&] { reflect(s, single, P({-kS2, kS2, 0})); }),
            ErrorCode::OutsideUniquenessRegime);
  EXPECT_NO_THROW(reflect(s, single, P({kS2, kS2, 0})));
  // contains never throws, even far from the set.
  EXPECT_FALSE(contains(s, single, P({-1, 0, 0}), 1e-9));
}

TEST(ConvexSets, ReflectionThroughPointsAndHalfSpaces) {
  for (double k : {-1.0, -4.0, 0.0, 1.0, 4.0}) {
    const ModelSpace space(k, 2);
    Sampler smp(space, 17);
    const double spread = space.spherical() ? 0.2 * space.diameter() : space.length_scale();
    for (int i = 0; i < 200; ++i) {
      const Point x = smp.near(space.origin(), spread);
      // Point reflection is an involution.
      const ConvexSet point = smp.set(SetFamily::Singleton, space.origin(), spread);
      EXPECT_LT(space.distance(reflect(space, point, reflect(space, point, x)), x), 1e-8) << "k=" << k;
      // A half-space reflection lands inside the set, at the same distance from the foot.
      const ConvexSet half = smp.set(SetFamily::HalfSpace, space.origin(), spread);
      const Point r = reflect(space, half, x);
      EXPECT_TRUE(contains(space, half, r, 1e-9)) << "k=" << k;
      EXPECT_EQ(reflect(space, half, r), r);
      const Point p = project(space, half, x);
      EXPECT_NEAR(space.distance(r, p), space.distance(x, p), 1e-9) << "k=" << k;
    }
  }
}

TEST(ConvexSets, ProjectionMatchesBruteForce) {
  for (double k : {-1.0, 0.0, 1.0}) {
    const ModelSpace space(k, 2);
    Sampler smp(space, 99);
    // Spherical draws stay within D/2 of the sets.
    const double reach = k > 0 ? 0.5 : 1.0;
    for (int i = 0; i < 40; ++i) {
      const Point a = smp.near(space.origin(), reach);
      const Segment seg{a, smp.near(a, 1.5 * reach)};
      const Point x = smp.near(space.origin(), 1.5 * reach);
      const auto best = oracle::segment_minimizer(space, seg, x);
      EXPECT_LT(space.distance(project(space, seg, x), best.point), 1e-4) << "k=" << k;
      // The closed form is the true minimum; the grid can only overshoot.
      EXPECT_LE(dist_to_set(space, seg, x), best.dist + 1e-12);
      EXPECT_GE(dist_to_set(space, seg, x), best.dist - 1e-4);

      // Circumference kept below 2 so that the grid spacing is under 2e-4.
      const Ball ball{smp.near(space.origin(), reach), smp.uniform(0.05, 0.3)};
      Point y = smp.near(ball.center, 1.2 * reach);
      if (space.distance(y, ball.center) <= ball.radius) continue;
      const auto bb = oracle::ball_minimizer(space, smp, ball, y);
      EXPECT_LT(space.distance(project(space, ball, y), bb.point), 1e-4) << "k=" << k;
      EXPECT_LE(dist_to_set(space, ball, y), bb.dist + 1e-12);
      EXPECT_GE(dist_to_set(space, ball, y), bb.dist - 1e-4);
    }
  }
}

TEST(ConvexSets, SphericalProjectionCanExpand) {
  // Projection onto a cap of radius 1.4 moves points at distance 2 from the
  // centre onto a circle of larger circumference: sin(1.4) > sin(2).
  const ModelSpace s(1, 2);
  const ConvexSet cap = Ball{P({0, 0, 1}), 1.4};
  auto at = [](double polar, double az) {
    return P({std::sin(polar) * std::cos(az), std::sin(polar) * std::sin(az), std::cos(polar)});
  };
  const Point x = at(2.0, 0.0), y = at(2.0, 0.01);
  const double before = s.distance(x, y);
  const double after = s.distance(project(s, cap, x), project(s, cap, y));
  EXPECT_GT(after, before * 1.05);
  // Reflections stay nonexpansive on the same pair.
  EXPECT_LE(s.distance(reflect(s, cap, x), reflect(s, cap, y)), before + 1e-12);
}

TEST(ConvexSets, RandomizedProjectionProperties) {
  for (double k : kSuiteCurvatures)
    for (SetFamily f : kAllFamilies) {
      const SuiteReport r = projection_properties(k, to_string(f), 300, 11);
      EXPECT_EQ(r.violations, 0u) << format_report(r);
      EXPECT_EQ(r.checked, 300u) << format_report(r);
    }
}

TEST(ConvexSets, RandomizedReflectionNonexpansivity) {
  for (double k : kSuiteCurvatures)
    for (SetFamily f : kAllFamilies) {
      const SuiteReport r = reflection_nonexpansivity(k, to_string(f), 500, 12);
      EXPECT_EQ(r.violations, 0u) << format_report(r);
      EXPECT_EQ(r.checked, 500u) << format_report(r);
    }
}

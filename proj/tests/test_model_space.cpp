#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "aar/model_space.hpp"
#include "aar/sampling.hpp"

using namespace aar;

namespace {

Point P(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

const double kS2 = std::sqrt(2.0) / 2.0;

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

TEST(ModelSpace, DiameterIsFiniteOnlyForPositiveCurvature) {
  EXPECT_DOUBLE_EQ(ModelSpace(1, 2).diameter(), std::numbers::pi);
  EXPECT_DOUBLE_EQ(ModelSpace(4, 2).diameter(), std::numbers::pi / 2);
  EXPECT_TRUE(std::isinf(ModelSpace(0, 2).diameter()));
  EXPECT_TRUE(std::isinf(ModelSpace(-1, 2).diameter()));
  EXPECT_EQ(code_of([] { ModelSpace(1, 0); }), ErrorCode::WrongDimension);
}

TEST(ModelSpace, ValidatePoint) {
  EXPECT_NO_THROW(ModelSpace(-1, 2).validate_point(P({0, 0, 1})));
  EXPECT_NO_THROW(ModelSpace(1, 2).validate_point(P({1, 0, 0})));
  const ModelSpace h(-1, 2);
  try {
    h.validate_point(P({0, 0, 0.9}));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::OffSurface);
    EXPECT_NEAR(e.value(), 0.19, 1e-12);
  }
  EXPECT_EQ(code_of([&] { h.validate_point(P({0, 0, -1})); }), ErrorCode::OffSurface);
  EXPECT_EQ(code_of([&] { h.validate_point(P({0, 1})); }), ErrorCode::WrongDimension);
  EXPECT_NO_THROW(ModelSpace(0, 2).validate_point(P({3, -7})));
}

TEST(ModelSpace, DistanceExamples) {
  const Point a = P({1, 0, 0}), b = P({kS2, kS2, 0});
  EXPECT_NEAR(ModelSpace(1, 2).distance(a, b), std::numbers::pi / 4, 1e-15);
  const Point x = P({0, 0, 1}), y = P({0, std::sinh(1.0), std::cosh(1.0)});
  EXPECT_NEAR(ModelSpace(-1, 2).distance(x, y), 1.0, 1e-14);
  EXPECT_NEAR(ModelSpace(-4, 2).distance(x, y), 0.5, 1e-14);
  EXPECT_DOUBLE_EQ(ModelSpace(0, 2).distance(P({0, 0}), P({3, 4})), 5.0);
  EXPECT_EQ(ModelSpace(-1, 2).distance(y, y), 0.0);
}

TEST(ModelSpace, DistanceIsAccurateForNearbyPoints) {
  const ModelSpace h(-1, 2);
  const Point x = h.origin();
  const Point y = P({1e-9, 0, std::sqrt(1 + 1e-18)});
  EXPECT_NEAR(h.distance(x, y), 1e-9, 1e-20);
  const ModelSpace s(1, 2);
  EXPECT_NEAR(s.distance(P({1, 0, 0}), P({std::cos(1e-10), std::sin(1e-10), 0})), 1e-10, 1e-22);
}

TEST(ModelSpace, GeodesicPointExamples) {
  const ModelSpace s(1, 2);
  const Point m = s.geodesic_point(P({1, 0, 0}), P({0, 1, 0}), 0.5);
  EXPECT_LT((m - P({kS2, kS2, 0})).norm(), 1e-15);

  const ModelSpace h(-1, 2);
  const Point x = P({0, 0, 1}), y = P({0, std::sinh(1.0), std::cosh(1.0)});
  const Point z = h.geodesic_point(x, y, 2.0);
  EXPECT_LT((z - P({0, std::sinh(2.0), std::cosh(2.0)})).norm(), 1e-13);
  EXPECT_NEAR(h.distance(x, z), 2.0, 1e-13);
  EXPECT_NEAR(h.distance(y, z), 1.0, 1e-13);

  EXPECT_EQ(h.geodesic_point(x, y, 0.0), x);
  EXPECT_EQ(h.geodesic_point(x, y, 1.0), y);
}

TEST(ModelSpace, GeodesicPointErrors) {
  const ModelSpace s(1, 2);
  const Point a = P({1, 0, 0});
  EXPECT_EQ(code_of([&] { s.geodesic_point(a, a, 0.5); }), ErrorCode::DegenerateGeodesic);
  EXPECT_EQ(code_of([&] { s.geodesic_point(a, -a, 0.5); }), ErrorCode::DegenerateGeodesic);
  EXPECT_EQ(code_of([&] { s.geodesic_point(a, P({0, 1, 0}), 2.0); }),
            ErrorCode::ExtensionOutOfDomain);
  EXPECT_NO_THROW(s.geodesic_point(a, P({0, 1, 0}), 1.9));
  const ModelSpace h(-1, 2);
  EXPECT_EQ(code_of([&] { h.geodesic_point(h.origin(), h.origin(), 0.3); }),
            ErrorCode::DegenerateGeodesic);
}

TEST(ModelSpace, AngleExamples) {
  const ModelSpace s(1, 2);
  EXPECT_NEAR(s.angle(P({1, 0, 0}), P({0, 0, 1}), P({0, 1, 0})), std::numbers::pi / 2, 1e-15);
  const ModelSpace e(0, 2);
  EXPECT_NEAR(e.angle(P({0, 0}), P({1, 0}), P({0.5, std::sqrt(3.0) / 2})), std::numbers::pi / 3,
              1e-15);
  EXPECT_EQ(code_of([&] { e.angle(P({0, 0}), P({0, 0}), P({1, 0})); }), ErrorCode::DegenerateAngle);
}

TEST(ModelSpace, PointReflectionExamples) {
  const ModelSpace e(0, 2);
  EXPECT_LT((e.point_reflection(P({0, 0}), P({1, 1})) - P({-1, -1})).norm(), 1e-15);
  const ModelSpace h(-1, 2);
  const Point c = P({0, 0, 1}), x = P({0, std::sinh(1.0), std::cosh(1.0)});
  const Point r = h.point_reflection(c, x);
  EXPECT_LT((r - P({0, -std::sinh(1.0), std::cosh(1.0)})).norm(), 1e-13);
  EXPECT_NEAR(h.distance(r, c), h.distance(x, c), 1e-13);
  EXPECT_NEAR(h.distance(x, r), 2 * h.distance(x, c), 1e-13);
  EXPECT_EQ(h.point_reflection(c, c), c);
}

TEST(ModelSpace, ClampCheckedSeparatesNoiseFromBugs) {
  EXPECT_EQ(clamp_checked(1.0 + 1e-9, -1.0, 1.0, 1e-7), 1.0);
  EXPECT_EQ(code_of([] { clamp_checked(1.0 + 1e-6, -1.0, 1.0, 1e-7); }),
            ErrorCode::NumericalDomain);
}

// Randomized invariants, one instantiation per curvature.
class ModelSpaceProperties : public ::testing::TestWithParam<double> {
 protected:
  ModelSpace space{GetParam(), 3};
  Sampler s{space, 20240917};

  Point draw() {
    if (space.spherical()) return s.near(space.origin(), 0.45 * space.diameter());
    return s.near(space.origin(), 3.0 * space.length_scale());
  }
};

TEST_P(ModelSpaceProperties, SurfaceAndArcLength) {
  for (int i = 0; i < 500; ++i) {
    const Point x = draw(), y = draw();
    const double d = space.distance(x, y);
    const double t = s.uniform(), u = s.uniform();
    const Point ct = space.geodesic_point(x, y, t), cu = space.geodesic_point(x, y, u);
    EXPECT_NO_THROW(space.validate_point(ct));
    EXPECT_NEAR(space.distance(ct, cu), std::abs(t - u) * d, 1e-8);
    const double ext = space.spherical() ? s.uniform(1.0, 0.95 * space.diameter() / d) : 1.7;
    if (ext > 1.0) {
      const Point e = space.geodesic_point(x, y, ext);
      EXPECT_NO_THROW(space.validate_point(e));
      EXPECT_NEAR(space.distance(x, e), ext * d, 1e-8);
    }
  }
}

TEST_P(ModelSpaceProperties, LawOfCosinesRoundTrip) {
  const double k = space.curvature();
  for (int i = 0; i < 500; ++i) {
    const Point v = draw(), p = draw(), q = draw();
    const double a = space.distance(v, p), b = space.distance(v, q), c = space.distance(p, q);
    const double g = space.angle(v, p, q);
    double rebuilt = 0.0;
    if (k > 0) {
      const double r = std::sqrt(k);
      rebuilt = std::acos(std::cos(r * a) * std::cos(r * b) +
                          std::sin(r * a) * std::sin(r * b) * std::cos(g)) / r;
    } else if (k < 0) {
      const double r = std::sqrt(-k);
      rebuilt = std::acosh(std::cosh(r * a) * std::cosh(r * b) -
                           std::sinh(r * a) * std::sinh(r * b) * std::cos(g)) / r;
    } else {
      rebuilt = std::sqrt(std::max(0.0, a * a + b * b - 2 * a * b * std::cos(g)));
    }
    // acos/acosh lose precision near 0; skip nearly degenerate sides.
    if (c > 1e-3) EXPECT_NEAR(rebuilt, c, 1e-8);
  }
}

TEST_P(ModelSpaceProperties, TriangleInequalityAndSymmetry) {
  for (int i = 0; i < 500; ++i) {
    const Point x = draw(), y = draw(), z = draw();
    EXPECT_EQ(space.distance(x, y), space.distance(y, x));
    EXPECT_LE(space.distance(x, z), space.distance(x, y) + space.distance(y, z) + 1e-12);
  }
}

TEST_P(ModelSpaceProperties, BusemannMidpointInequality) {
  if (space.spherical()) GTEST_SKIP() << "midpoint convexity is a nonpositive-curvature property";
  for (int i = 0; i < 500; ++i) {
    const Point x = draw(), y = draw(), z = draw(), w = draw();
    const Point m1 = space.geodesic_point(x, z, 0.5), m2 = space.geodesic_point(y, w, 0.5);
    EXPECT_LE(space.distance(m1, m2), 0.5 * space.distance(x, y) + 0.5 * space.distance(z, w) + 1e-12);
  }
}

TEST_P(ModelSpaceProperties, LogExpRoundTrip) {
  for (int i = 0; i < 300; ++i) {
    const Point x = draw(), y = draw();
    const Tangent v = space.log_map(x, y);
    EXPECT_NEAR(space.tangent_norm(v), space.distance(x, y), 1e-10);
    EXPECT_LT(space.distance(space.exp_map(x, v), y), 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Curvatures, ModelSpaceProperties, ::testing::Values(-4.0, -1.0, 0.0, 1.0, 4.0));

TEST(ModelSpace, CurvatureScaling) {
  std::mt19937_64 rng(5);
  for (double k : {-4.0, -0.25, 9.0, 0.5}) {
    const ModelSpace unit(k > 0 ? 1.0 : -1.0, 2), scaled(k, 2);
    Sampler s(unit, rng());
    for (int i = 0; i < 100; ++i) {
      const Point x = s.near(unit.origin(), 1.2), y = s.near(unit.origin(), 1.2);
      EXPECT_NEAR(scaled.distance(x, y), unit.distance(x, y) / std::sqrt(std::abs(k)), 1e-13);
    }
  }
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aar/model_space.hpp"

namespace aar {

// ---------------------------------------------------------------------------
// Rate of asymptotic regularity for the Krasnoselski-Mann iteration
// ---------------------------------------------------------------------------

struct RateBoundQuery {
  double eps = 0.0;
  /// Upper bound on the diameter of the invariant region.
  double b = 0.0;
  int K = 2;
  /// When set and positive, b must stay below D_k/2.
  std::optional<double> curvature;
};

struct RateBound {
  /// Smallest integer M >= (K-1)(1+2b)/(K eps).
  std::int64_t M = 0;
  /// K M ceil(2b e^{K(M+1)}) when it fits in 64 bits.
  std::optional<std::uint64_t> value;
  double log10_value = 0.0;
  /// value ~= mantissa * 10^exponent, mantissa in [1, 10).
  double mantissa = 0.0;
  std::int64_t exponent = 0;
};

std::int64_t rate_bound_m(const RateBoundQuery& q);
/// Throws InvalidQuery for eps <= 0, b <= 0, K < 2 or b >= D_k/2.
RateBound rate_bound(const RateBoundQuery& q);

// ---------------------------------------------------------------------------
// Gluing of E^2 and H^2 along a line: reflection in {p} is not nonexpansive
// ---------------------------------------------------------------------------

/// f'(t) for f(t) = d(y, c(t)) + d(c'(t), p), y = (arccosh sqrt 2, h).
double gluing_fprime(double t, double h, double z);

struct GluingCounterexampleReport {
  double h = 0.0;
  double z = 0.0;
  double t0 = 0.0;
  double fprime_at_0 = 0.0;
  double fprime_at_end = 0.0;
  double d_xp = 0.0;
  double d_yp = 0.0;
  double cos_gamma = 0.0;
  double cosh_d = 0.0;
  double cosh_dxy = 0.0;
  bool violated = false;
  int bisection_steps = 0;
};

/// Requires h > 0 and z > 1 (InvalidQuery otherwise). f'(0) < 0 < f'(end)
/// holds for every such pair; NoRootBracketed is a defensive guard.
GluingCounterexampleReport gluing_counterexample(double h, double z);

inline constexpr double kGluingDefaultH = 0.01;
double gluing_default_z();  // (sqrt 2 + 15) / 16

// ---------------------------------------------------------------------------
// S^2: the averaged map T fails to be nonexpansive
// ---------------------------------------------------------------------------

struct SphericalCounterexampleReport {
  Point a, b, p, c, c_prime;
  Point Tc, Tc_prime;
  double d_TcTc_prime = 0.0;
  double d_cc_prime = 0.0;
  bool violated = false;
};

SphericalCounterexampleReport spherical_counterexample();

// ---------------------------------------------------------------------------
// Reference values vs computed values
// ---------------------------------------------------------------------------

struct Comparison {
  std::string quantity;
  double reference = 0.0;
  double computed = 0.0;
  double abs_diff = 0.0;
  bool within = false;
};

inline constexpr double kReferenceTolerance = 5e-4;

std::vector<Comparison> compare_gluing(const GluingCounterexampleReport& r,
                                       double tol = kReferenceTolerance);
std::vector<Comparison> compare_spherical(const SphericalCounterexampleReport& r,
                                          double tol = kReferenceTolerance);
std::string format_table(const std::vector<Comparison>& rows);

// ---------------------------------------------------------------------------
// Reflection-type property of model spaces
// ---------------------------------------------------------------------------

/// Six points with a the midpoint of [x, x'] and b the midpoint of [y, y'].
struct AppendixConfig {
  ModelSpace space;
  Point x, y, x_prime, y_prime, a, b;

  /// Builds the config with a and b as the geodesic midpoints.
  static AppendixConfig from_endpoints(const ModelSpace& space, const Point& x,
                                       const Point& x_prime, const Point& y,
                                       const Point& y_prime);
};

/// Flat: k = 0, where the hypothesis alone implies the conclusion.
enum class AppendixCase { I, II, III, Flat, None };

std::string_view to_string(AppendixCase c);

struct AppendixVerdict {
  bool hypothesis_holds = false;
  /// Grid part of the hypothesis: d(a,b) <= d(x_l, y_l) at every grid lambda.
  bool grid_holds = false;
  /// d/dlambda d(x_l, y_l) at lambda = 1, i.e. A cos(gamma') + B cos(gamma).
  double endpoint_slope = 0.0;
  AppendixCase case_ = AppendixCase::None;
  bool conclusion_holds = false;
  double A_len = 0.0;
  double B_len = 0.0;
  std::optional<double> gamma;
  std::optional<double> gamma_prime;
  double d_xy = 0.0;
  double d_xpyp = 0.0;
};

/// Throws InvalidConfig when the midpoint identities fail or the points
/// spread over D_k or more.
AppendixVerdict appendix_check(const AppendixConfig& cfg, int lambda_grid_size = 101);

}  // namespace aar

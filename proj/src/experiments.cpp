#include "aar/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "aar/convex_sets.hpp"
#include "aar/solver.hpp"

namespace aar {
namespace {

[[noreturn]] void bad_query(const std::string& what, double value = 0.0) {
  throw GeometryError(ErrorCode::InvalidQuery, what, value);
}

const double kArccoshSqrt2 = std::acosh(std::numbers::sqrt2);

// Bisection on a function increasing through zero on [lo, hi] down to a
// bracket of width `width`; the step count depends only on the bracket.
template <class F>
double bisect(F&& f, double lo, double hi, double width, int& steps) {
  steps = 0;
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++steps;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

// ---------------------------------------------------------------------------

std::int64_t rate_bound_m(const RateBoundQuery& q) {
  if (!(q.eps > 0.0) || !std::isfinite(q.eps)) bad_query("eps must be positive", q.eps);
  if (!(q.b > 0.0) || !std::isfinite(q.b)) bad_query("b must be positive", q.b);
  if (q.K < 2) bad_query("K must be >= 2", q.K);
  if (q.curvature && *q.curvature > 0.0) {
    const double half_diameter = 0.5 * std::numbers::pi / std::sqrt(*q.curvature);
    if (q.b >= half_diameter) bad_query("b must be below D_k/2", q.b);
  }
  const long double K = q.K;
  const long double ratio = (K - 1.0L) * (1.0L + 2.0L * q.b) / (K * q.eps);
  if (ratio > 9.0e18L) bad_query("M does not fit in 64 bits", static_cast<double>(ratio));
  // Snap values that are integers up to rounding (e.g. 3 / (2 * 0.1)).
  const long double nearest = std::nearbyint(ratio);
  long double m = std::fabs(ratio - nearest) <= 1e-12L * std::max(1.0L, ratio) ? nearest
                                                                                 : std::ceil(ratio);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(m));
}

RateBound rate_bound(const RateBoundQuery& q) {
  RateBound r;
  r.M = rate_bound_m(q);
  const long double exponent = static_cast<long double>(q.K) * static_cast<long double>(r.M + 1);
  const long double log10_inner =
      std::log10(2.0L * q.b) + exponent * std::numbers::log10e_v<long double>;

  if (log10_inner < 18.0L) {
    const long double inner = std::ceil(2.0L * q.b * std::exp(exponent));
    const unsigned __int128 product = static_cast<unsigned __int128>(q.K) *
                                      static_cast<unsigned __int128>(r.M) *
                                      static_cast<unsigned __int128>(inner);
    if (product <= std::numeric_limits<std::uint64_t>::max()) {
      r.value = static_cast<std::uint64_t>(product);
    }
  }
  r.log10_value = r.value ? static_cast<double>(std::log10(static_cast<long double>(*r.value)))
                          : static_cast<double>(std::log10(static_cast<long double>(q.K)) +
                                                std::log10(static_cast<long double>(r.M)) +
                                                log10_inner);
  r.exponent = static_cast<std::int64_t>(std::floor(r.log10_value));
  r.mantissa = std::pow(10.0, r.log10_value - static_cast<double>(r.exponent));
  return r;
}

// ---------------------------------------------------------------------------

double gluing_default_z() { return (std::numbers::sqrt2 + 15.0) / 16.0; }

double gluing_fprime(double t, double h, double z) {
  const double a = kArccoshSqrt2;
  const double ch = std::cosh(t);
  return z * std::sinh(t) / std::sqrt(z * z * ch * ch - 1.0) -
         (a - t) / std::sqrt((a - t) * (a - t) + h * h);
}

GluingCounterexampleReport gluing_counterexample(double h, double z) {
  if (!(h > 0.0)) bad_query("h must be positive", h);
  if (!(z > 1.0)) bad_query("z must exceed 1", z);
  const double a = kArccoshSqrt2;
  constexpr double kWidth = 1e-12;

  GluingCounterexampleReport r;
  r.h = h;
  r.z = z;
  r.fprime_at_0 = gluing_fprime(0.0, h, z);
  r.fprime_at_end = gluing_fprime(a, h, z);
  if (!(r.fprime_at_0 < 0.0 && r.fprime_at_end > 0.0)) {
    std::ostringstream os;
    os << "f'(0) = " << r.fprime_at_0 << ", f'(arccosh sqrt 2) = " << r.fprime_at_end;
    throw GeometryError(ErrorCode::NoRootBracketed, os.str(), r.fprime_at_0);
  }
  r.t0 = bisect([&](double t) { return gluing_fprime(t, h, z); }, 0.0, a, kWidth,
                r.bisection_steps);
  r.d_yp = std::hypot(a - r.t0, h) + std::acosh(z * std::cosh(r.t0));

  // The mirror image: x = (-arccosh sqrt 2, h) reaches p through c(-t0).
  auto fprime_x = [&](double t) {
    const double ch = std::cosh(t);
    return z * std::sinh(t) / std::sqrt(z * z * ch * ch - 1.0) -
           (-a - t) / std::sqrt((a + t) * (a + t) + h * h);
  };
  int steps_x = 0;
  const double s0 = bisect(fprime_x, -a, 0.0, kWidth, steps_x);
  r.d_xp = std::hypot(a + s0, h) + std::acosh(z * std::cosh(s0));

  // Hyperbolic law of cosines in the isosceles triangle p, c'(t0), c'(-t0).
  const double side = std::acosh(z * std::cosh(r.t0));
  const double ch = std::cosh(side);
  const double sh = std::sinh(side);
  r.cos_gamma = clamp_checked((ch * ch - std::cosh(2.0 * r.t0)) / (sh * sh), -1.0, 1.0, 1e-7);

  const double cx = std::cosh(r.d_xp);
  const double sx = std::sinh(r.d_xp);
  r.cosh_d = cx * cx - sx * sx * r.cos_gamma;
  r.cosh_dxy = std::cosh(2.0 * a);
  r.violated = r.cosh_d > r.cosh_dxy;
  return r;
}

// ---------------------------------------------------------------------------

SphericalCounterexampleReport spherical_counterexample() {
  const ModelSpace s2(1.0, 2);
  SphericalCounterexampleReport r;
  const double half = std::numbers::sqrt2 / 2.0;
  r.a = Eigen::Vector3d(1.0, 0.0, 0.0);
  r.b = Eigen::Vector3d(half, half, 0.0);
  r.p = Eigen::Vector3d(0.0, 0.0, 1.0);
  // d(a, p) = d(b, p) = pi/2, so t = 1/4 lands pi/8 along the meridian.
  r.c = s2.geodesic_point(r.a, r.p, 0.25);
  r.c_prime = s2.geodesic_point(r.b, r.p, 0.25);
  const ConvexSet A = Segment{r.a, r.b};
  const ConvexSet B = Segment{r.c, r.c_prime};
  r.Tc = aar_step(s2, A, B, r.c);
  r.Tc_prime = aar_step(s2, A, B, r.c_prime);
  r.d_TcTc_prime = s2.distance(r.Tc, r.Tc_prime);
  r.d_cc_prime = s2.distance(r.c, r.c_prime);
  r.violated = r.d_TcTc_prime > r.d_cc_prime;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

Comparison compare(std::string name, double reference, double computed, double tol) {
  const double diff = std::abs(reference - computed);
  return {std::move(name), reference, computed, diff, diff <= tol};
}

}  // namespace

std::vector<Comparison> compare_gluing(const GluingCounterexampleReport& r, double tol) {
  return {
      compare("t0", 0.8392, r.t0, tol),
      compare("cos_gamma", -0.7991, r.cos_gamma, tol),
      compare("cosh_d", 3.7363, r.cosh_d, tol),
      compare("cosh_dxy", 3.0, r.cosh_dxy, tol),
  };
}

std::vector<Comparison> compare_spherical(const SphericalCounterexampleReport& r, double tol) {
  return {
      compare("d(Tc,Tc')", std::numbers::pi / 4.0, r.d_TcTc_prime, tol),
      compare("d(c,c')", std::acos(0.75), r.d_cc_prime, tol),
  };
}

std::string format_table(const std::vector<Comparison>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(12) << "quantity" << std::right << std::setw(14) << "reference"
     << std::setw(18) << "computed" << std::setw(14) << "abs_diff" << "  status\n";
  for (const auto& row : rows) {
    os << std::left << std::setw(12) << row.quantity << std::right << std::fixed
       << std::setprecision(6) << std::setw(14) << row.reference << std::setprecision(10)
       << std::setw(18) << row.computed << std::scientific << std::setprecision(3)
       << std::setw(14) << row.abs_diff << "  " << (row.within ? "match" : "MISMATCH") << "\n";
    os.unsetf(std::ios::floatfield);
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::string_view to_string(AppendixCase c) {
  switch (c) {
    case AppendixCase::I: return "i";
    case AppendixCase::II: return "ii";
    case AppendixCase::III: return "iii";
    case AppendixCase::Flat: return "flat";
    case AppendixCase::None: return "none";
  }
  return "none";
}

AppendixConfig AppendixConfig::from_endpoints(const ModelSpace& space, const Point& x,
                                              const Point& x_prime, const Point& y,
                                              const Point& y_prime) {
  return AppendixConfig{space,
                        x,
                        y,
                        x_prime,
                        y_prime,
                        space.interpolate(x, x_prime, 0.5),
                        space.interpolate(y, y_prime, 0.5)};
}

AppendixVerdict appendix_check(const AppendixConfig& cfg, int lambda_grid_size) {
  if (lambda_grid_size < 2) {
    throw GeometryError(ErrorCode::InvalidConfig, "lambda grid needs at least two points",
                        lambda_grid_size);
  }
  const ModelSpace& space = cfg.space;
  constexpr double kMidpointTol = 1e-9;
  constexpr double kTiny = 1e-12;
  constexpr double kBoundary = 1e-6;
  constexpr double kSlack = 1e-9;

  auto check_midpoint = [&](const Point& u, const Point& m, const Point& v, const char* name) {
    const double um = space.distance(u, m);
    const double mv = space.distance(m, v);
    const double uv = space.distance(u, v);
    if (std::abs(um - mv) > kMidpointTol || std::abs(uv - 2.0 * um) > kMidpointTol) {
      throw GeometryError(ErrorCode::InvalidConfig, std::string(name) + " is not a midpoint",
                          std::abs(uv - 2.0 * um));
    }
  };
  check_midpoint(cfg.x, cfg.a, cfg.x_prime, "a");
  check_midpoint(cfg.y, cfg.b, cfg.y_prime, "b");
  if (space.spherical()) {
    const Point* pts[] = {&cfg.x, &cfg.y, &cfg.x_prime, &cfg.y_prime, &cfg.a, &cfg.b};
    for (const Point* p : pts) {
      for (const Point* q : pts) {
        if (space.distance(*p, *q) >= space.diameter() - 1e-9) {
          throw GeometryError(ErrorCode::InvalidConfig, "configuration spreads over D_k");
        }
      }
    }
  }

  AppendixVerdict v;
  v.A_len = space.distance(cfg.x, cfg.a);
  v.B_len = space.distance(cfg.y, cfg.b);
  const double d_ab = space.distance(cfg.a, cfg.b);

  v.grid_holds = true;
  for (int i = 0; i < lambda_grid_size; ++i) {
    const double lambda = static_cast<double>(i) / (lambda_grid_size - 1);
    const Point xl = space.interpolate(cfg.x, cfg.a, lambda);
    const Point yl = space.interpolate(cfg.y, cfg.b, lambda);
    if (space.distance(xl, yl) - d_ab < -kSlack) {
      v.grid_holds = false;
      break;
    }
  }

  // First variation of lambda -> d(x_l, y_l) at lambda = 1: the limit of the
  // hypothesis that the grid cannot resolve.
  if (d_ab > kTiny) {
    if (v.A_len > kTiny) v.gamma_prime = space.angle(cfg.a, cfg.x, cfg.b);
    if (v.B_len > kTiny) v.gamma = space.angle(cfg.b, cfg.y, cfg.a);
    v.endpoint_slope = (v.gamma_prime ? v.A_len * std::cos(*v.gamma_prime) : 0.0) +
                       (v.gamma ? v.B_len * std::cos(*v.gamma) : 0.0);
  }
  v.hypothesis_holds = v.grid_holds && v.endpoint_slope <= kTiny;

  const double right = std::numbers::pi / 2.0;
  auto below = [&](const std::optional<double>& g) { return g && *g <= right - kBoundary; };
  auto above = [&](const std::optional<double>& g) { return g && *g >= right + kBoundary; };
  if (space.flat()) {
    v.case_ = AppendixCase::Flat;
  } else if (v.A_len <= kTiny) {
    v.case_ = AppendixCase::I;
  } else if (std::abs(v.A_len - v.B_len) <= kTiny) {
    v.case_ = AppendixCase::II;
  } else if (v.A_len < v.B_len) {
    const bool angles_ok = space.hyperbolic() ? (below(v.gamma) || above(v.gamma_prime))
                                              : (above(v.gamma) || below(v.gamma_prime));
    v.case_ = angles_ok ? AppendixCase::III : AppendixCase::None;
  }

  v.d_xy = space.distance(cfg.x, cfg.y);
  v.d_xpyp = space.distance(cfg.x_prime, cfg.y_prime);
  v.conclusion_holds = v.d_xpyp <= v.d_xy + kSlack;
  return v;
}

}  // namespace aar

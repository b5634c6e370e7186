#include "aar/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace aar {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::OffSurface: return "OffSurface";
    case ErrorCode::DegenerateGeodesic: return "DegenerateGeodesic";
    case ErrorCode::ExtensionOutOfDomain: return "ExtensionOutOfDomain";
    case ErrorCode::DegenerateAngle: return "DegenerateAngle";
    case ErrorCode::NumericalDomain: return "NumericalDomain";
    case ErrorCode::InvalidSet: return "InvalidSet";
    case ErrorCode::OutsideUniquenessRegime: return "OutsideUniquenessRegime";
    case ErrorCode::AmbiguousSeam: return "AmbiguousSeam";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NoRootBracketed: return "NoRootBracketed";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidQuery: return "InvalidQuery";
  }
  return "Unknown";
}

double clamp_checked(double value, double lo, double hi, double slack) {
  if (value < lo - slack || value > hi + slack || std::isnan(value)) {
    std::ostringstream os;
    os << "value " << value << " outside [" << lo << ", " << hi << "]";
    throw GeometryError(ErrorCode::NumericalDomain, os.str(), value);
  }
  return std::clamp(value, lo, hi);
}

ModelSpace::ModelSpace(double k, int n, Tolerances tol)
    : k_(k), n_(n), scale_(k == 0.0 ? 1.0 : 1.0 / std::sqrt(std::abs(k))), tol_(tol) {
  if (n < 1) {
    throw GeometryError(ErrorCode::WrongDimension, "model space dimension must be >= 1", n);
  }
  if (!std::isfinite(k)) {
    throw GeometryError(ErrorCode::InvalidConfig, "curvature must be finite", k);
  }
}

double ModelSpace::diameter() const noexcept {
  return spherical() ? std::numbers::pi * scale_ : std::numeric_limits<double>::infinity();
}

double ModelSpace::form(const Point& u, const Point& v) const {
  if (!hyperbolic()) return u.dot(v);
  const Eigen::Index last = u.size() - 1;
  return u.head(last).dot(v.head(last)) - u[last] * v[last];
}

void ModelSpace::validate_point(const Point& x) const {
  if (x.size() != ambient_dimension()) {
    std::ostringstream os;
    os << "expected " << ambient_dimension() << " coordinates, got " << x.size();
    throw GeometryError(ErrorCode::WrongDimension, os.str(), static_cast<double>(x.size()));
  }
  if (!x.allFinite()) {
    throw GeometryError(ErrorCode::OffSurface, "non-finite coordinate",
                        std::numeric_limits<double>::quiet_NaN());
  }
  if (flat()) return;
  const double residual = hyperbolic() ? form(x, x) + 1.0 : x.squaredNorm() - 1.0;
  // Rounding in the form grows with the squared magnitude of the coordinates.
  if (std::abs(residual) > tol_.surface * std::max(1.0, x.squaredNorm())) {
    std::ostringstream os;
    os << (hyperbolic() ? "<x|x> = -1" : "(x|x) = 1") << " violated by " << residual;
    throw GeometryError(ErrorCode::OffSurface, os.str(), residual);
  }
  if (hyperbolic() && x[x.size() - 1] <= 0.0) {
    throw GeometryError(ErrorCode::OffSurface, "point on the lower sheet of the hyperboloid",
                        x[x.size() - 1]);
  }
}

bool ModelSpace::is_valid(const Point& x) const noexcept {
  try {
    validate_point(x);
    return true;
  } catch (const GeometryError&) {
    return false;
  }
}

Point ModelSpace::origin() const {
  Point o = Point::Zero(ambient_dimension());
  if (!flat()) o[o.size() - 1] = 1.0;
  return o;
}

Point ModelSpace::renormalize(const Point& x) const {
  if (flat()) return x;
  if (spherical()) return x / x.norm();
  Point r = x;
  const Eigen::Index last = r.size() - 1;
  r[last] = std::sqrt(1.0 + r.head(last).squaredNorm());
  return r;
}

// Both branches work from x - y, which keeps short distances accurate where
// acos((x|y)) and acosh(-<x|y>) lose half of the significant digits.
double ModelSpace::unit_distance(const Point& x, const Point& y) const {
  if (flat()) return (x - y).norm();
  if (spherical()) return 2.0 * std::atan2((x - y).norm(), (x + y).norm());
  const double cosh_d = -form(x, y);
  if (cosh_d > 2.0) return std::acosh(cosh_d);
  const Point diff = x - y;
  // <x - y | x - y> = 2 cosh d - 2 = 4 sinh^2(d/2)
  const double chord2 = clamp_checked(form(diff, diff), 0.0,
                                      std::numeric_limits<double>::infinity(), tol_.clamp);
  return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

double ModelSpace::distance(const Point& x, const Point& y) const {
  validate_point(x);
  validate_point(y);
  return unit_distance(x, y) * scale_;
}

Tangent ModelSpace::to_tangent(const Point& base, const Eigen::VectorXd& v) const {
  if (flat()) return v;
  if (spherical()) return v - base.dot(v) * base;
  return v + form(base, v) * base;
}

double ModelSpace::tangent_norm(const Tangent& v) const {
  return std::sqrt(std::max(0.0, form(v, v)));
}

Tangent ModelSpace::log_map(const Point& base, const Point& y) const {
  validate_point(base);
  validate_point(y);
  const double theta = unit_distance(base, y);
  if (theta <= kCoincident) return Tangent::Zero(base.size());
  if (spherical() && theta * scale_ > diameter() - 1e-9) {
    throw GeometryError(ErrorCode::DegenerateGeodesic, "antipodal points have no unique geodesic",
                        theta * scale_);
  }
  if (flat()) return y - base;
  const Tangent w = to_tangent(base, y - base);
  return w * (theta * scale_ / tangent_norm(w));
}

Point ModelSpace::exp_map(const Point& base, const Tangent& v) const {
  validate_point(base);
  if (v.size() != base.size()) {
    throw GeometryError(ErrorCode::WrongDimension, "tangent vector size mismatch",
                        static_cast<double>(v.size()));
  }
  if (flat()) return base + v;
  const Tangent u = to_tangent(base, v);
  const double length = tangent_norm(u);
  if (length == 0.0) return base;
  check_extension(length);
  const double theta = length / scale_;
  const Tangent dir = u / length;
  if (spherical()) return renormalize(std::cos(theta) * base + std::sin(theta) * dir);
  return renormalize(std::cosh(theta) * base + std::sinh(theta) * dir);
}

void ModelSpace::check_extension(double length) const {
  if (spherical() && length >= diameter()) {
    std::ostringstream os;
    os << "geodesic extension of length " << length << " reaches D_k = " << diameter();
    throw GeometryError(ErrorCode::ExtensionOutOfDomain, os.str(), length);
  }
}

Point ModelSpace::geodesic_point(const Point& x, const Point& y, double t) const {
  validate_point(x);
  validate_point(y);
  const double theta = unit_distance(x, y);
  if (theta <= kCoincident) {
    throw GeometryError(ErrorCode::DegenerateGeodesic, "endpoints coincide", theta * scale_);
  }
  const double length = theta * scale_;
  if (spherical() && length > diameter() - 1e-9) {
    throw GeometryError(ErrorCode::DegenerateGeodesic, "antipodal points have no unique geodesic",
                        length);
  }
  if (t == 0.0) return x;
  if (t == 1.0) return y;
  check_extension(std::abs(t) * length);
  if (flat()) return x + t * (y - x);
  if (hyperbolic()) {
    // Two-point form: the tangent construction cancels badly once the
    // coordinates of x are large.
    const double s = std::sinh(theta);
    return renormalize((std::sinh((1.0 - t) * theta) / s) * x + (std::sinh(t * theta) / s) * y);
  }
  Tangent dir = to_tangent(x, y - x);
  dir /= tangent_norm(dir);
  const double arc = t * theta;
  return renormalize(std::cos(arc) * x + std::sin(arc) * dir);
}

Point ModelSpace::interpolate(const Point& x, const Point& y, double t) const {
  validate_point(x);
  validate_point(y);
  if (unit_distance(x, y) <= kCoincident) return x;
  return geodesic_point(x, y, t);
}

double ModelSpace::angle(const Point& vertex, const Point& p, const Point& q) const {
  validate_point(vertex);
  validate_point(p);
  validate_point(q);
  if (unit_distance(vertex, p) <= kCoincident || unit_distance(vertex, q) <= kCoincident) {
    throw GeometryError(ErrorCode::DegenerateAngle, "a side of the angle has zero length");
  }
  Tangent u = log_map(vertex, p);
  Tangent w = log_map(vertex, q);
  u /= tangent_norm(u);
  w /= tangent_norm(w);
  return 2.0 * std::atan2(tangent_norm(u - w), tangent_norm(u + w));
}

Point ModelSpace::point_reflection(const Point& center, const Point& x) const {
  validate_point(center);
  validate_point(x);
  if (unit_distance(center, x) <= kCoincident) return center;
  return geodesic_point(x, center, 2.0);
}

}  // namespace aar

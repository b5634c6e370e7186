#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aar {

enum class ErrorCode {
  WrongDimension,
  OffSurface,
  DegenerateGeodesic,
  ExtensionOutOfDomain,
  DegenerateAngle,
  NumericalDomain,
  InvalidSet,
  OutsideUniquenessRegime,
  AmbiguousSeam,
  DomainViolation,
  NoRootBracketed,
  InvalidConfig,
  InvalidQuery,
};

std::string_view to_string(ErrorCode code);

/// Raised by every geometric operation that cannot honour its contract.
/// `value()` carries the offending quantity when there is one (a surface
/// residual, a distance that exceeded a bound, ...), otherwise 0.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what, double value = 0.0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  double value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  double value_;
};

}  // namespace aar

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace aar {

struct CheckOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
};

/// Outcome of one randomized property suite.
struct SuiteReport {
  std::string name;
  /// Draws that satisfied the suite's preconditions and were evaluated.
  std::size_t checked = 0;
  /// Draws rejected because a precondition failed (domain, filter, ...).
  std::size_t rejected = 0;
  std::size_t violations = 0;
  /// Largest observed lhs - rhs of the checked inequality (can be negative).
  double worst_excess = -1e300;
  std::map<std::string, std::size_t> breakdown;

  void record(double excess, double tol) {
    ++checked;
    if (excess > worst_excess) worst_excess = excess;
    if (excess > tol) ++violations;
  }
};

/// Curvatures exercised by the model-space suites.
inline constexpr double kSuiteCurvatures[] = {-1.0, -4.0, 0.0, 1.0, 4.0};

/// d(R_C x, R_C y) <= d(x, y) + 1e-9 for one curvature and set family.
SuiteReport reflection_nonexpansivity(double k, std::string_view family, std::size_t samples,
                                      std::uint64_t seed);

/// Point-gluing reflection over random glued spaces, sets and point pairs.
SuiteReport glued_reflection_nonexpansivity(std::size_t samples, std::uint64_t seed);

/// Membership, variational angle, segment consistency and (k <= 0)
/// nonexpansivity of the projection.
SuiteReport projection_properties(double k, std::string_view family, std::size_t samples,
                                  std::uint64_t seed);

/// Random feasible instances in H^2 (k = -1) or E^2 (k = 0) built around a
/// known common point.
SuiteReport solver_convergence(double k, std::size_t instances, std::uint64_t seed);

/// Randomized harness for the reflection-type midpoint property; `samples`
/// counts configurations that pass the hypothesis and fall in a case.
SuiteReport appendix_harness(double k, std::size_t samples, std::uint64_t seed);

/// Dispatches "nonexpansivity", "projection", "solver", "appendix" or "all".
/// Throws std::invalid_argument for unknown names.
std::vector<SuiteReport> run_suite(std::string_view suite, const CheckOptions& options);

std::string format_report(const SuiteReport& r);

}  // namespace aar

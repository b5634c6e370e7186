#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aar/convex_sets.hpp"
#include "aar/gluing.hpp"

namespace aar {

enum class Method { AAR, KM };
enum class SolveStatus { Converged, MaxIterReached, DomainError };

std::string_view to_string(Method m);
std::string_view to_string(SolveStatus s);

/// Relaxation parameters lambda_n, confined to the band [1/K, 1 - 1/K].
class LambdaSchedule {
 public:
  enum class Kind { Constant, List };

  static LambdaSchedule constant(double lambda, int K = 2);
  /// The last value is reused once the list is exhausted.
  static LambdaSchedule list(std::vector<double> values, int K);

  double at(std::size_t n) const;
  Kind kind() const { return kind_; }
  int band() const { return K_; }
  const std::vector<double>& values() const { return values_; }

  /// Throws InvalidConfig when K < 2 or a value leaves the band.
  void validate() const;

 private:
  LambdaSchedule(Kind kind, std::vector<double> values, int K)
      : kind_(kind), values_(std::move(values)), K_(K) {}

  Kind kind_;
  std::vector<double> values_;
  int K_;
};

struct SolverConfig {
  Method method = Method::AAR;
  LambdaSchedule lambda = LambdaSchedule::constant(0.5, 2);
  /// Stop once d(x_n, x_{n+1}) <= eps ...
  double eps = 1e-10;
  /// ... and the shadow P_B x_n is within feas_tol of A (and of B).
  double feas_tol = 1e-8;
  int max_iter = 10000;

  void validate() const;
  double lambda_at(std::size_t n) const { return method == Method::AAR ? 0.5 : lambda.at(n); }
};

struct ModelProblem {
  ModelSpace space;
  ConvexSet A;
  ConvexSet B;
  Point x0;
  /// Invariant region C for k > 0; its radius must be below D_k/4 so that
  /// diam(C) < D_k/2. Every iterate is checked to stay inside.
  std::optional<Ball> region;
};

struct GluedProblem {
  GluedSpace space;
  GluedSet A;
  GluedSet B;
  GluedPoint x0;
};

template <class P>
struct IterateRecord {
  int n = 0;
  P x;
  double step = 0.0;
  P shadow;
  double dist_A_of_shadow = 0.0;
};

struct Certificate {
  double dist_A = 0.0;
  double dist_B = 0.0;
};

template <class P>
struct SolveResult {
  SolveStatus status = SolveStatus::MaxIterReached;
  int iterations = 0;
  P final_x;
  P shadow;
  Certificate certificate;
  std::vector<IterateRecord<P>> trace;
  /// Set when status == DomainError.
  std::string message;
  std::optional<int> failed_index;
};

/// T x = midpoint of x and R_A R_B x.
Point aar_step(const ModelSpace& space, const ConvexSet& A, const ConvexSet& B, const Point& x);
GluedPoint aar_step(const GluedSpace& space, const GluedSet& A, const GluedSet& B,
                    const GluedPoint& x);

/// (1 - lambda) x + lambda R_A R_B x along the geodesic.
Point km_step(const ModelSpace& space, const ConvexSet& A, const ConvexSet& B, const Point& x,
              double lambda);
GluedPoint km_step(const GluedSpace& space, const GluedSet& A, const GluedSet& B,
                   const GluedPoint& x, double lambda);

SolveResult<Point> solve(const ModelProblem& problem, const SolverConfig& config);
SolveResult<GluedPoint> solve(const GluedProblem& problem, const SolverConfig& config);

/// d(x_{n+1}, p) <= d(x_n, p) + tol along the recorded iterates.
bool fejer_check(const ModelSpace& space, const std::vector<IterateRecord<Point>>& trace,
                 const Point& p, double tol = 1e-9);
bool fejer_check(const GluedSpace& space, const std::vector<IterateRecord<GluedPoint>>& trace,
                 const GluedPoint& p, double tol = 1e-9);

/// Sufficient test for set inclusion in a ball (exact for every family but
/// half-spaces, which are never contained in a ball).
bool set_within_ball(const ModelSpace& space, const ConvexSet& set, const Ball& ball,
                     double tol = 1e-9);

}  // namespace aar

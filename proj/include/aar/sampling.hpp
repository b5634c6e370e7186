#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "aar/convex_sets.hpp"

namespace aar {

enum class SetFamily { Singleton, Ball, Segment, HalfSpace };

inline constexpr SetFamily kAllFamilies[] = {SetFamily::Singleton, SetFamily::Ball,
                                             SetFamily::Segment, SetFamily::HalfSpace};

std::string_view to_string(SetFamily f);

/// Seeded random points, directions and convex sets in one model space.
class Sampler {
 public:
  Sampler(const ModelSpace& space, std::uint64_t seed) : space_(space), rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  /// Unit tangent vector at `base`, uniformly distributed in direction.
  Tangent unit_tangent(const Point& base);

  /// Point at a uniformly drawn distance in [0, max_radius) from `center`.
  Point near(const Point& center, double max_radius);

  /// Uniform point on the whole sphere (k > 0 only).
  Point anywhere_on_sphere();

  /// A valid set of the family around `anchor`; `spread` bounds its size.
  ConvexSet set(SetFamily family, const Point& anchor, double spread);

  std::mt19937_64& engine() { return rng_; }
  const ModelSpace& space() const { return space_; }

 private:
  const ModelSpace& space_;
  std::mt19937_64 rng_;
};

}  // namespace aar
